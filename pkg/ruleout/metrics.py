"""Closed-form decision metrics for operating points.

Operating points live either in ROC space (true-positive rate against
false-positive rate) or in recall/detection space (fraction of all screened
patients recalled against fraction recalled with cancer). Every function in
this module is pure.
"""

import collections
import math

from ruleout import constants
from ruleout.errors import RuleoutException


def _check_probability(value, name):
    """
    :param value: value to check
    :type value: float
    :param name: field name used in the error message
    :type name: str
    :returns: the value as a float
    :rtype: float
    """

    try:
        value = float(value)
    except (TypeError, ValueError):
        raise RuleoutException(
            '{} must be a number, got {!r}'.format(name, value))
    if not 0.0 <= value <= 1.0:
        raise RuleoutException(
            '{} must be within [0, 1], got {!r}'.format(name, value))
    return value


def _check_positive(value, name):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise RuleoutException(
            '{} must be a number, got {!r}'.format(name, value))
    if not (value > 0 and math.isfinite(value)):
        raise RuleoutException(
            '{} must be a positive number, got {!r}'.format(name, value))
    return value


def _close(a, b):
    return math.isclose(a, b, rel_tol=constants.REL_TOL, abs_tol=0.0)


class ConfusionCounts(collections.namedtuple(
        'ConfusionCounts', ['n_tp', 'n_fp', 'n_tn', 'n_fn'])):
    """Outcome counts of a binary test against the truth.

    :param n_tp: true positives
    :type n_tp: int
    :param n_fp: false positives
    :type n_fp: int
    :param n_tn: true negatives
    :type n_tn: int
    :param n_fn: false negatives
    :type n_fn: int
    """

    __slots__ = ()

    def __new__(cls, n_tp, n_fp, n_tn, n_fn):
        for name, value in zip(cls._fields, (n_tp, n_fp, n_tn, n_fn)):
            if isinstance(value, bool) or not isinstance(value, int) or \
                    value < 0:
                raise RuleoutException(
                    '{} must be a non-negative integer, got {!r}'.format(
                        name, value))
        return super(ConfusionCounts, cls).__new__(
            cls, n_tp, n_fp, n_tn, n_fn)

    @property
    def n_cancer(self):
        return self.n_tp + self.n_fn

    @property
    def n_noncancer(self):
        return self.n_fp + self.n_tn

    @property
    def total(self):
        return self.n_cancer + self.n_noncancer


class RocPoint(collections.namedtuple('RocPoint', ['tpr', 'fpr', 'counts'])):
    """Operating point in ROC space.

    :param tpr: true-positive rate (sensitivity)
    :type tpr: float
    :param fpr: false-positive rate (1 - specificity)
    :type fpr: float
    :param counts: the outcome counts behind the rates, when known
    :type counts: ConfusionCounts | None
    """

    __slots__ = ()

    def __new__(cls, tpr, fpr, counts=None):
        tpr = _check_probability(tpr, 'tpr')
        fpr = _check_probability(fpr, 'fpr')

        if counts is not None:
            if counts.n_cancer == 0 or counts.n_noncancer == 0:
                raise RuleoutException(
                    'Counts need at least one cancer and one non-cancer '
                    'case: {!r}'.format(counts))
            if not (_close(tpr, counts.n_tp / counts.n_cancer) and
                    _close(fpr, counts.n_fp / counts.n_noncancer)):
                raise RuleoutException(
                    'Rates ({}, {}) disagree with counts {!r}'.format(
                        tpr, fpr, counts))

        return super(RocPoint, cls).__new__(cls, tpr, fpr, counts)

    @classmethod
    def from_counts(cls, counts):
        """
        :param counts: outcome counts
        :type counts: ConfusionCounts
        :rtype: RocPoint
        """

        if counts.n_cancer == 0 or counts.n_noncancer == 0:
            raise RuleoutException(
                'Counts need at least one cancer and one non-cancer '
                'case: {!r}'.format(counts))
        return cls(counts.n_tp / counts.n_cancer,
                   counts.n_fp / counts.n_noncancer,
                   counts)

    @classmethod
    def from_se_sp(cls, sensitivity, specificity):
        specificity = _check_probability(specificity, 'specificity')
        return cls(sensitivity, 1.0 - specificity)

    @property
    def specificity(self):
        return 1.0 - self.fpr


class RdPoint(collections.namedtuple(
        'RdPoint', ['recall_rate', 'detection_rate', 'n_patients'])):
    """Operating point in recall/detection space.

    :param recall_rate: fraction of screened patients recalled
    :type recall_rate: float
    :param detection_rate: fraction of screened patients recalled with cancer
    :type detection_rate: float
    :param n_patients: population size behind the rates, when known
    :type n_patients: int | None
    """

    __slots__ = ()

    def __new__(cls, recall_rate, detection_rate, n_patients=None):
        recall_rate = _check_probability(recall_rate, 'recall_rate')
        detection_rate = _check_probability(detection_rate, 'detection_rate')
        if detection_rate > recall_rate:
            raise RuleoutException(
                'detection_rate {} cannot exceed recall_rate {}: a detected '
                'cancer is recalled'.format(detection_rate, recall_rate))
        if n_patients is not None and (
                isinstance(n_patients, bool) or
                not isinstance(n_patients, int) or n_patients < 1):
            raise RuleoutException(
                'n_patients must be a positive integer, got {!r}'.format(
                    n_patients))
        return super(RdPoint, cls).__new__(
            cls, recall_rate, detection_rate, n_patients)

    @property
    def benign_recall_rate(self):
        return self.recall_rate - self.detection_rate


OutcomeUtilities = collections.namedtuple(
    'OutcomeUtilities', ['u_tp', 'u_fp', 'u_tn', 'u_fn'])
"""Absolute utilities of the four test outcomes"""


class UtilityContext(collections.namedtuple(
        'UtilityContext',
        ['prevalence', 'relative_utility', 'outcome_utilities'])):
    """Population and preferences an operating point is judged under.

    :param prevalence: disease prevalence, strictly between 0 and 1
    :type prevalence: float
    :param relative_utility: benefit of finding a cancer relative to the
                             benefit of clearing a non-cancer; None when only
                             predictive values are needed
    :type relative_utility: float | None
    :param outcome_utilities: absolute outcome utilities, when known
    :type outcome_utilities: OutcomeUtilities | None
    """

    __slots__ = ()

    def __new__(cls, prevalence, relative_utility=None,
                outcome_utilities=None):
        prevalence = _check_probability(prevalence, 'prevalence')
        if prevalence in (0.0, 1.0):
            raise RuleoutException(
                'prevalence must be strictly between 0 and 1, got {!r}'.format(
                    prevalence))

        if relative_utility is not None:
            relative_utility = _check_positive(
                relative_utility, 'relative_utility')

        if outcome_utilities is not None:
            outcome_utilities = OutcomeUtilities(
                *[float(u) for u in outcome_utilities])
            u = outcome_utilities
            if not (u.u_tp > u.u_fn and u.u_tn > u.u_fp):
                raise RuleoutException(
                    'A correct decision must have greater utility than an '
                    'incorrect one: {!r}'.format(u))
            implied = (u.u_tp - u.u_fn) / (u.u_tn - u.u_fp)
            if relative_utility is None:
                relative_utility = implied
            elif not _close(relative_utility, implied):
                raise RuleoutException(
                    'relative_utility {} disagrees with outcome utilities '
                    '{!r}'.format(relative_utility, u))

        return super(UtilityContext, cls).__new__(
            cls, prevalence, relative_utility, outcome_utilities)

    @classmethod
    def from_outcome_utilities(cls, prevalence, u_tp, u_fp, u_tn, u_fn):
        """
        :returns: context whose relative utility is derived from the
                  outcome utilities
        :rtype: UtilityContext
        """

        return cls(prevalence,
                   outcome_utilities=OutcomeUtilities(u_tp, u_fp, u_tn, u_fn))

    @property
    def prevalence_odds(self):
        return prevalence_odds(self.prevalence)

    def require_relative_utility(self):
        """
        :returns: the relative utility
        :rtype: float
        """

        if self.relative_utility is None:
            raise RuleoutException(
                'A relative utility is required for utility metrics')
        return self.relative_utility


def prevalence_odds(prevalence):
    """
    :param prevalence: disease prevalence
    :type prevalence: float
    :returns: odds against disease, (1 - prevalence) / prevalence
    :rtype: float
    """

    return (1.0 - prevalence) / prevalence


def counts_prevalence(counts):
    """
    :param counts: outcome counts
    :type counts: ConfusionCounts
    :returns: fraction of cases with cancer
    :rtype: float
    """

    if counts.total == 0:
        raise RuleoutException('Cannot derive prevalence from empty counts')
    return counts.n_cancer / counts.total


def likelihood_ratios(p):
    """Positive and negative likelihood ratios. The ratios are infinite where
    the denominator vanishes, and 1 at the corners of the chance diagonal.

    :param p: operating point
    :type p: RocPoint
    :returns: (rho_plus, rho_minus)
    :rtype: (float, float)
    """

    if p.fpr == 0.0:
        rho_plus = math.inf if p.tpr > 0.0 else 1.0
    else:
        rho_plus = p.tpr / p.fpr

    if p.fpr == 1.0:
        rho_minus = math.inf if p.tpr < 1.0 else 1.0
    else:
        rho_minus = (1.0 - p.tpr) / (1.0 - p.fpr)

    return rho_plus, rho_minus


def ppv(p, ctx):
    """
    :param p: operating point
    :type p: RocPoint
    :param ctx: utility context; only the prevalence is used
    :type ctx: UtilityContext
    :returns: positive predictive value
    :rtype: float
    """

    rho_plus, _ = likelihood_ratios(p)
    if math.isinf(rho_plus):
        return 1.0
    return rho_plus / (rho_plus + ctx.prevalence_odds)


def npv(p, ctx):
    """
    :param p: operating point
    :type p: RocPoint
    :param ctx: utility context; only the prevalence is used
    :type ctx: UtilityContext
    :returns: negative predictive value
    :rtype: float
    """

    _, rho_minus = likelihood_ratios(p)
    if math.isinf(rho_minus):
        return 0.0
    q = ctx.prevalence_odds
    return q / (rho_minus + q)


def predictive_values_from_counts(counts):
    """Predictive values read directly off the counts

    :param counts: outcome counts
    :type counts: ConfusionCounts
    :returns: (ppv, npv)
    :rtype: (float, float)
    """

    called_positive = counts.n_tp + counts.n_fp
    called_negative = counts.n_tn + counts.n_fn
    if called_positive == 0 or called_negative == 0:
        raise RuleoutException(
            'Predictive values need both positive and negative calls: '
            '{!r}'.format(counts))
    return counts.n_tp / called_positive, counts.n_tn / called_negative


def _require_outcome_utilities(ctx):
    if ctx.outcome_utilities is None:
        raise RuleoutException(
            'Expected utility needs the absolute outcome utilities '
            '(U_TP, U_FP, U_TN, U_FN); use the iso-utility intercepts when '
            'only the relative utility is known')
    return ctx.outcome_utilities


def expected_utility(p, ctx):
    """
    :param p: operating point
    :type p: RocPoint
    :param ctx: context carrying outcome utilities
    :type ctx: UtilityContext
    :returns: expected utility per screened patient
    :rtype: float
    """

    u = _require_outcome_utilities(ctx)
    pi = ctx.prevalence
    return (u.u_tp * p.tpr * pi +
            u.u_fn * (1.0 - p.tpr) * pi +
            u.u_tn * (1.0 - p.fpr) * (1.0 - pi) +
            u.u_fp * p.fpr * (1.0 - pi))


def expected_utility_from_iui(intercept, ctx):
    """Expected utility of any operating point with the given iso-utility
    intercept.

    :param intercept: iso-utility intercept
    :type intercept: float
    :param ctx: context carrying outcome utilities
    :type ctx: UtilityContext
    :rtype: float
    """

    u = _require_outcome_utilities(ctx)
    pi = ctx.prevalence
    return (intercept * (u.u_tp - u.u_fn) * pi +
            u.u_fn * pi +
            u.u_tn * (1.0 - pi))


def iso_slope_roc(ctx):
    """
    :param ctx: utility context with a relative utility
    :type ctx: UtilityContext
    :returns: slope of the iso-utility lines in ROC space
    :rtype: float
    """

    return ctx.prevalence_odds / ctx.require_relative_utility()


def iso_slope_rd(u_rel):
    """
    :param u_rel: relative utility
    :type u_rel: float
    :returns: slope of the iso-utility lines in recall/detection space
    :rtype: float
    """

    u_rel = _check_positive(u_rel, 'relative_utility')
    return 1.0 / (1.0 + u_rel)


def iui(p, ctx):
    """Iso-utility intercept: where the iso-utility line through `p` crosses
    fpr = 0.

    :param p: operating point
    :type p: RocPoint
    :param ctx: utility context with a relative utility
    :type ctx: UtilityContext
    :rtype: float
    """

    return p.tpr - iso_slope_roc(ctx) * p.fpr


def diui(p, u_rel):
    """Detection iso-utility intercept: where the iso-utility line through
    `p` crosses a recall rate of 0.

    :param p: operating point
    :type p: RdPoint
    :param u_rel: relative utility
    :type u_rel: float
    :rtype: float
    """

    u_rel = _check_positive(u_rel, 'relative_utility')
    return p.detection_rate - p.recall_rate / (1.0 + u_rel)


def roc_to_rd(p, ctx):
    """
    :param p: operating point
    :type p: RocPoint
    :param ctx: utility context; only the prevalence is used
    :type ctx: UtilityContext
    :rtype: RdPoint
    """

    pi = ctx.prevalence
    detection_rate = pi * p.tpr
    recall_rate = min(detection_rate + (1.0 - pi) * p.fpr, 1.0)
    n_patients = p.counts.total if p.counts is not None else None
    return RdPoint(recall_rate, detection_rate, n_patients)


def rd_to_roc(p, ctx):
    """
    :param p: operating point
    :type p: RdPoint
    :param ctx: utility context; only the prevalence is used
    :type ctx: UtilityContext
    :rtype: RocPoint
    """

    pi = ctx.prevalence
    if p.detection_rate > pi:
        raise RuleoutException(
            'detection_rate {} exceeds the prevalence {}'.format(
                p.detection_rate, pi))

    benign = p.recall_rate - p.detection_rate
    # Tolerate the rounding of a round trip through roc_to_rd
    if benign > (1.0 - pi) * (1.0 + constants.REL_TOL):
        raise RuleoutException(
            'benign recall rate {} exceeds the non-cancer fraction {}'.format(
                benign, 1.0 - pi))

    return RocPoint(p.detection_rate / pi, min(benign / (1.0 - pi), 1.0))


def relative_utility_from_roc_slope(slope, prevalence):
    """
    :param slope: tangent slope of an ROC curve
    :type slope: float
    :param prevalence: disease prevalence
    :type prevalence: float
    :returns: relative utility at which the tangent point is optimal
    :rtype: float
    """

    slope = _check_positive(slope, 'slope')
    return UtilityContext(prevalence).prevalence_odds / slope


def relative_utility_from_rd_slope(slope):
    """
    :param slope: tangent slope of a recall/detection curve
    :type slope: float
    :returns: relative utility at which the tangent point is optimal
    :rtype: float
    """

    try:
        slope = float(slope)
    except (TypeError, ValueError):
        raise RuleoutException('slope must be a number, got {!r}'.format(
            slope))
    if not 0.0 < slope < 1.0:
        raise RuleoutException(
            'Recall/detection slope must lie strictly between 0 and 1 to '
            'imply a positive relative utility, got {!r}'.format(slope))
    return 1.0 / slope - 1.0
