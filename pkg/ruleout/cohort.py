"""Patient cohorts and the believe-the-negative rule-out workflow.

A rule-out device removes every exam whose AI score falls below a threshold
from the reading queue. Exams it keeps are read exactly as they were without
the device, so a patient is recalled with the device only when the device
keeps the exam and the reader recalls it.
"""

import collections
import csv
import math

import numpy as np

from ruleout import constants, util
from ruleout.errors import CohortFormatException, RuleoutException
from ruleout.metrics import (ConfusionCounts, RdPoint, RocPoint,
                             counts_prevalence)

logger = util.get_logger(__name__)


class PatientRecord(collections.namedtuple(
        'PatientRecord',
        ['patient_id', 'truth', 'reader_decision', 'ai_score'])):
    """One screened patient.

    :param patient_id: opaque identifier
    :type patient_id: str
    :param truth: 1 when cancer is present
    :type truth: int
    :param reader_decision: 1 when recalled by the reader without the device
    :type reader_decision: int
    :param ai_score: AI suspicion score, higher is more suspicious
    :type ai_score: float
    """

    __slots__ = ()

    def __new__(cls, patient_id, truth, reader_decision, ai_score):
        for name, value in (('truth', truth),
                            ('reader_decision', reader_decision)):
            if value not in (0, 1) or isinstance(value, float):
                raise RuleoutException(
                    '{} must be 0 or 1, got {!r}'.format(name, value))
        ai_score = float(ai_score)
        if not math.isfinite(ai_score):
            raise RuleoutException(
                'ai_score must be finite, got {!r}'.format(ai_score))
        return super(PatientRecord, cls).__new__(
            cls, str(patient_id), int(truth), int(reader_decision), ai_score)


class Cohort(object):
    """Immutable, ordered collection of patients with unique ids.

    :param records: patients in file order
    :type records: [PatientRecord]
    """

    def __init__(self, records):
        records = tuple(records)
        if not records:
            raise RuleoutException('empty cohort')

        seen = set()
        for record in records:
            if record.patient_id in seen:
                raise RuleoutException(
                    'duplicate patient_id {!r}'.format(record.patient_id))
            seen.add(record.patient_id)

        self._records = records
        self._truth = np.array([r.truth == 1 for r in records], dtype=bool)
        self._reader = np.array(
            [r.reader_decision == 1 for r in records], dtype=bool)
        self._scores = np.array([r.ai_score for r in records], dtype=float)
        self._sorted_scores = np.sort(self._scores)

        for array in (self._truth, self._reader, self._scores,
                      self._sorted_scores):
            array.setflags(write=False)

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __getitem__(self, index):
        return self._records[index]

    @property
    def records(self):
        return self._records

    @property
    def truth(self):
        return self._truth

    @property
    def reader_decisions(self):
        return self._reader

    @property
    def scores(self):
        return self._scores

    @property
    def sorted_scores(self):
        return self._sorted_scores

    @property
    def n_cancer(self):
        return int(self._truth.sum())

    @property
    def n_noncancer(self):
        return len(self) - self.n_cancer

    def require_both_classes(self):
        """Raises when rates of one truth class would be undefined

        :rtype: None
        """

        if self.n_cancer == 0 or self.n_noncancer == 0:
            raise RuleoutException(
                'Cohort needs at least one cancer and one non-cancer '
                'patient, got {} and {}'.format(
                    self.n_cancer, self.n_noncancer))


def ingest_cohort(stream):
    """Reads a cohort from comma separated text with the header
    `patient_id,truth,reader_decision,ai_score`. Blank lines and lines
    starting with '#' are ignored.

    :param stream: text stream, or a binary stream of UTF-8 lines
    :type stream: file-like
    :rtype: Cohort
    """

    header = None
    records = []
    seen = {}

    for line_number, line in enumerate(stream, start=1):
        try:
            line = util.decode_line(line)
        except UnicodeDecodeError as e:
            if header is None:
                raise RuleoutException('Line {}: {}'.format(
                    line_number, util.decode_error_reason(e)))
            raise CohortFormatException(
                len(records) + 1, line_number, util.decode_error_reason(e))

        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue

        fields = [f.strip() for f in next(csv.reader([stripped]))]

        if header is None:
            header = fields
            if header != constants.COHORT_HEADER:
                raise RuleoutException(
                    'Line {}: cohort header must be {!r}, got {!r}'.format(
                        line_number, ','.join(constants.COHORT_HEADER),
                        stripped))
            continue

        row = len(records) + 1
        records.append(_parse_record(fields, row, line_number))

        patient_id = records[-1].patient_id
        if patient_id in seen:
            raise CohortFormatException(
                row, line_number,
                'duplicate patient_id {!r} (first seen on row {})'.format(
                    patient_id, seen[patient_id]))
        seen[patient_id] = row

    if not records:
        raise RuleoutException('empty cohort')

    cohort = Cohort(records)
    logger.info('Ingested cohort of %d patients', len(cohort))
    logger.debug('Cohort class sizes: %d cancer, %d non-cancer',
                 cohort.n_cancer, cohort.n_noncancer)
    return cohort


def _parse_record(fields, row, line_number):
    """
    :param fields: the fields of one data row
    :type fields: [str]
    :param row: 1-based data row number
    :type row: int
    :param line_number: physical line number
    :type line_number: int
    :rtype: PatientRecord
    """

    if len(fields) != len(constants.COHORT_HEADER):
        raise CohortFormatException(
            row, line_number, 'expected {} fields, got {}'.format(
                len(constants.COHORT_HEADER), len(fields)))

    patient_id, truth, reader_decision, ai_score = fields
    if not patient_id:
        raise CohortFormatException(row, line_number, 'empty patient_id')

    for name, value in (('truth', truth),
                        ('reader_decision', reader_decision)):
        if value not in ('0', '1'):
            raise CohortFormatException(
                row, line_number,
                '{} must be 0 or 1, got {!r}'.format(name, value))

    try:
        score = float(ai_score)
    except ValueError:
        raise CohortFormatException(
            row, line_number,
            'ai_score must be a decimal number, got {!r}'.format(ai_score))
    if not math.isfinite(score):
        raise CohortFormatException(
            row, line_number,
            'ai_score must be finite, got {!r}'.format(ai_score))

    return PatientRecord(patient_id, int(truth), int(reader_decision), score)


def load_cohort(path):
    """
    :param path: path to a cohort file
    :type path: str
    :rtype: Cohort
    """

    with util.open_file(path, 'rb') as f:
        return ingest_cohort(f)


class ClassCells(collections.namedtuple(
        'ClassCells', ['pos_both', 'pos_ref_only', 'neg_both'])):
    """Joint outcome counts of one truth class. There is no cell for
    'positive with the device only': the device only removes positives.

    :param pos_both: recalled with and without the device
    :type pos_both: int
    :param pos_ref_only: recalled without the device, ruled out with it
    :type pos_ref_only: int
    :param neg_both: recalled by neither workflow
    :type neg_both: int
    """

    __slots__ = ()

    def __new__(cls, pos_both, pos_ref_only, neg_both):
        values = []
        for name, value in zip(cls._fields,
                               (pos_both, pos_ref_only, neg_both)):
            if isinstance(value, (bool, float)) or int(value) != value or \
                    value < 0:
                raise RuleoutException(
                    '{} must be a non-negative integer, got {!r}'.format(
                        name, value))
            values.append(int(value))
        return super(ClassCells, cls).__new__(cls, *values)

    @property
    def total(self):
        return self.pos_both + self.pos_ref_only + self.neg_both

    @property
    def candidate_positive(self):
        return self.pos_both

    @property
    def reference_positive(self):
        return self.pos_both + self.pos_ref_only


class PairedOutcomeTable(collections.namedtuple(
        'PairedOutcomeTable', ['cancer', 'noncancer', 'residuals'])):
    """Nested joint outcomes of the with-device (candidate) and
    without-device (reference) workflows on the same patients.

    :param cancer: cells of the cancer class
    :type cancer: ClassCells
    :param noncancer: cells of the non-cancer class
    :type noncancer: ClassCells
    :param residuals: rounding residuals when rebuilt from published rates
    :type residuals: dict | None
    """

    __slots__ = ()

    def __new__(cls, cancer, noncancer, residuals=None):
        return super(PairedOutcomeTable, cls).__new__(
            cls, ClassCells(*cancer), ClassCells(*noncancer), residuals)

    @property
    def n_cancer(self):
        return self.cancer.total

    @property
    def n_noncancer(self):
        return self.noncancer.total

    @property
    def total(self):
        return self.n_cancer + self.n_noncancer

    def candidate_counts(self):
        """
        :returns: outcome counts of the with-device workflow
        :rtype: ConfusionCounts
        """

        return ConfusionCounts(
            n_tp=self.cancer.candidate_positive,
            n_fp=self.noncancer.candidate_positive,
            n_tn=self.n_noncancer - self.noncancer.candidate_positive,
            n_fn=self.n_cancer - self.cancer.candidate_positive)

    def reference_counts(self):
        """
        :returns: outcome counts of the without-device workflow
        :rtype: ConfusionCounts
        """

        return ConfusionCounts(
            n_tp=self.cancer.reference_positive,
            n_fp=self.noncancer.reference_positive,
            n_tn=self.n_noncancer - self.noncancer.reference_positive,
            n_fn=self.n_cancer - self.cancer.reference_positive)

    def candidate(self):
        return RocPoint.from_counts(self.candidate_counts())

    def reference(self):
        return RocPoint.from_counts(self.reference_counts())

    def prevalence(self):
        """
        :returns: fraction of cancers among all patients in the table
        :rtype: float
        """

        return counts_prevalence(self.reference_counts())

    def cells(self):
        """
        :returns: the six cells, cancer class first
        :rtype: [int]
        """

        return list(self.cancer) + list(self.noncancer)


RuleoutResult = collections.namedtuple(
    'RuleoutResult',
    ['threshold', 'with_device', 'without_device', 'table',
     'ruled_out_fraction', 'standalone', 'n_read'])
"""Outcome of running the rule-out workflow at one threshold"""


def apply_ruleout(c, threshold):
    """Rule out every patient whose AI score is strictly below `threshold`
    and recall the remaining patients the reader recalled.

    :param c: cohort
    :type c: Cohort
    :param threshold: AI score threshold; may be infinite
    :type threshold: float
    :rtype: RuleoutResult
    """

    threshold = float(threshold)
    if math.isnan(threshold):
        raise RuleoutException('threshold must not be NaN')
    c.require_both_classes()

    truth = c.truth
    reader = c.reader_decisions
    retained = c.scores >= threshold
    with_device = retained & reader

    def cells(mask):
        return ClassCells(
            int(np.count_nonzero(with_device & mask)),
            int(np.count_nonzero(reader & ~with_device & mask)),
            int(np.count_nonzero(~reader & mask)))

    table = PairedOutcomeTable(cells(truth), cells(~truth))

    standalone = RocPoint.from_counts(ConfusionCounts(
        n_tp=int(np.count_nonzero(retained & truth)),
        n_fp=int(np.count_nonzero(retained & ~truth)),
        n_tn=int(np.count_nonzero(~retained & ~truth)),
        n_fn=int(np.count_nonzero(~retained & truth))))

    n_read = int(np.count_nonzero(retained))

    return RuleoutResult(
        threshold=threshold,
        with_device=table.candidate(),
        without_device=table.reference(),
        table=table,
        ruled_out_fraction=(len(c) - n_read) / len(c),
        standalone=standalone,
        n_read=n_read)


def threshold_for_fraction(c, fraction):
    """Smallest threshold ruling out the largest achievable fraction of the
    cohort that does not exceed `fraction`. Tied scores are ruled out
    together or not at all.

    :param c: cohort
    :type c: Cohort
    :param fraction: requested rule-out fraction
    :type fraction: float
    :returns: (threshold, achieved_fraction)
    :rtype: (float, float)
    """

    fraction = float(fraction)
    if not 0.0 <= fraction <= 1.0:
        raise RuleoutException(
            'rule-out fraction must be within [0, 1], got {!r}'.format(
                fraction))

    scores = c.sorted_scores
    n = len(scores)
    # Guard against 0.3 * 10 == 2.9999999999999996
    k = min(int(math.floor(fraction * n + 1e-9)), n)
    if 0 < k < n:
        k = int(np.searchsorted(scores, scores[k], side='left'))

    if k == 0:
        return -math.inf, 0.0
    return float(np.nextafter(scores[k - 1], math.inf)), k / n


SweepRow = collections.namedtuple(
    'SweepRow', ['requested_fraction', 'achieved_fraction', 'result'])
"""One point of a rule-out sweep"""


def sweep(c, fractions, workers=1):
    """Runs the workflow at each requested rule-out fraction.

    :param c: cohort
    :type c: Cohort
    :param fractions: requested rule-out fractions
    :type fractions: [float]
    :param workers: number of threads
    :type workers: int
    :returns: rows ordered by requested fraction
    :rtype: [SweepRow]
    """

    def run(fraction):
        threshold, achieved = threshold_for_fraction(c, fraction)
        return SweepRow(fraction, achieved, apply_ruleout(c, threshold))

    ordered = sorted(float(f) for f in fractions)
    return util.ordered_map(run, ordered, workers)


def sweep_thresholds(c, thresholds, workers=1):
    """Runs the workflow at explicit thresholds, in ascending order.

    :param c: cohort
    :type c: Cohort
    :param thresholds: AI score thresholds
    :type thresholds: [float]
    :param workers: number of threads
    :type workers: int
    :rtype: [SweepRow]
    """

    def run(threshold):
        result = apply_ruleout(c, threshold)
        return SweepRow(None, result.ruled_out_fraction, result)

    return util.ordered_map(
        run, sorted(float(t) for t in thresholds), workers)


def _round_half_up(value):
    return int(math.floor(value + 0.5))


def _nested_row(n, ref_rate, cand_rate):
    """
    :returns: (cells, residuals) of one truth class
    :rtype: (ClassCells, dict)
    """

    ref_exact = ref_rate * n
    cand_exact = cand_rate * n
    ref_positive = _round_half_up(ref_exact)
    cand_positive = _round_half_up(cand_exact)
    cells = ClassCells(
        cand_positive, ref_positive - cand_positive, n - ref_positive)
    residuals = {'reference': ref_exact - ref_positive,
                 'candidate': cand_exact - cand_positive}
    return cells, residuals


def _check_class_size(n, name):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise RuleoutException(
            '{} must be a positive integer, got {!r}'.format(name, n))


def table_from_aggregates(n_cancer, n_noncancer, ref, cand):
    """Rebuilds the nested paired table from published rates of the two
    workflows.

    :param n_cancer: number of cancer cases
    :type n_cancer: int
    :param n_noncancer: number of non-cancer cases
    :type n_noncancer: int
    :param ref: without-device operating point
    :type ref: RocPoint
    :param cand: with-device operating point
    :type cand: RocPoint
    :rtype: PairedOutcomeTable
    """

    _check_class_size(n_cancer, 'n_cancer')
    _check_class_size(n_noncancer, 'n_noncancer')

    if cand.tpr > ref.tpr or cand.fpr > ref.fpr:
        raise RuleoutException(
            'Candidate ({}, {}) cannot arise from the reference ({}, {}) by '
            'rule-out: both rates can only drop'.format(
                cand.tpr, cand.fpr, ref.tpr, ref.fpr))

    cancer, cancer_residuals = _nested_row(n_cancer, ref.tpr, cand.tpr)
    noncancer, noncancer_residuals = _nested_row(
        n_noncancer, ref.fpr, cand.fpr)
    residuals = {'cancer': cancer_residuals, 'noncancer': noncancer_residuals}
    logger.debug('Reconstruction residuals: %r', residuals)

    return PairedOutcomeTable(cancer, noncancer, residuals)


class PairedRecallTable(collections.namedtuple(
        'PairedRecallTable',
        ['detected_both', 'detected_ref_only', 'benign_both',
         'benign_ref_only', 'not_recalled', 'residuals'])):
    """Nested joint recall outcomes of two workflows over all screened
    exams, used when only recall and detection rates are published.

    :param detected_both: cancers recalled by both workflows
    :type detected_both: int
    :param detected_ref_only: cancers recalled by the reference only
    :type detected_ref_only: int
    :param benign_both: non-cancers recalled by both workflows
    :type benign_both: int
    :param benign_ref_only: non-cancers recalled by the reference only
    :type benign_ref_only: int
    :param not_recalled: exams the reference does not recall
    :type not_recalled: int
    :param residuals: rounding residuals when rebuilt from published rates
    :type residuals: dict | None
    """

    __slots__ = ()

    def __new__(cls, detected_both, detected_ref_only, benign_both,
                benign_ref_only, not_recalled, residuals=None):
        values = []
        for name, value in zip(cls._fields[:5],
                               (detected_both, detected_ref_only, benign_both,
                                benign_ref_only, not_recalled)):
            if isinstance(value, (bool, float)) or int(value) != value or \
                    value < 0:
                raise RuleoutException(
                    '{} must be a non-negative integer, got {!r}'.format(
                        name, value))
            values.append(int(value))
        if sum(values) == 0:
            raise RuleoutException('Recall table needs at least one exam')
        return super(PairedRecallTable, cls).__new__(
            cls, *values, residuals=residuals)

    @property
    def total(self):
        return sum(self.cells())

    def cells(self):
        return [self.detected_both, self.detected_ref_only, self.benign_both,
                self.benign_ref_only, self.not_recalled]

    def candidate(self):
        n = self.total
        return RdPoint((self.detected_both + self.benign_both) / n,
                       self.detected_both / n, n)

    def reference(self):
        n = self.total
        detected = self.detected_both + self.detected_ref_only
        recalled = detected + self.benign_both + self.benign_ref_only
        return RdPoint(recalled / n, detected / n, n)


def rd_table_from_aggregates(n, ref, cand):
    """Rebuilds the nested recall table from published recall and detection
    rates of the two workflows.

    :param n: number of screened exams
    :type n: int
    :param ref: without-device operating point
    :type ref: RdPoint
    :param cand: with-device operating point
    :type cand: RdPoint
    :rtype: PairedRecallTable
    """

    _check_class_size(n, 'n')

    if cand.detection_rate > ref.detection_rate or \
            cand.recall_rate > ref.recall_rate or \
            cand.benign_recall_rate > ref.benign_recall_rate:
        raise RuleoutException(
            'Candidate (recall {}, detection {}) cannot arise from the '
            'reference (recall {}, detection {}) by rule-out: detected and '
            'benign recalls can only drop'.format(
                cand.recall_rate, cand.detection_rate,
                ref.recall_rate, ref.detection_rate))

    ref_detected = _round_half_up(ref.detection_rate * n)
    ref_recalled = _round_half_up(ref.recall_rate * n)
    cand_detected = _round_half_up(cand.detection_rate * n)
    cand_recalled = _round_half_up(cand.recall_rate * n)

    benign_both = cand_recalled - cand_detected
    benign_ref_only = (ref_recalled - ref_detected) - benign_both
    if benign_ref_only < 0:
        raise RuleoutException(
            'Rounded counts violate nesting: candidate benign recalls {} '
            'exceed the reference {}'.format(
                benign_both, ref_recalled - ref_detected))

    residuals = {
        'reference_detected': ref.detection_rate * n - ref_detected,
        'reference_recalled': ref.recall_rate * n - ref_recalled,
        'candidate_detected': cand.detection_rate * n - cand_detected,
        'candidate_recalled': cand.recall_rate * n - cand_recalled,
    }
    logger.debug('Reconstruction residuals: %r', residuals)

    return PairedRecallTable(
        detected_both=cand_detected,
        detected_ref_only=ref_detected - cand_detected,
        benign_both=benign_both,
        benign_ref_only=benign_ref_only,
        not_recalled=n - ref_recalled,
        residuals=residuals)
