"""Published study aggregates bundled with the package.

Fixture values are inputs copied from the published tables, not outputs.
Each fixture is validated against `data/studies/study.schema.json` on load.
"""

import collections
import importlib.resources
import json

from ruleout import constants, metrics, util
from ruleout.cohort import rd_table_from_aggregates, table_from_aggregates
from ruleout.errors import RuleoutException

logger = util.get_logger(__name__)

STUDY_NAMES = ['us-2019', 'euro-2022']
"""Names of the bundled studies"""


class StudyFixture(collections.namedtuple(
        'StudyFixture',
        ['name', 'description', 'space', 'prevalence', 'relative_utility',
         'relative_utility_band', 'n_exams', 'n_cancer', 'rows', 'notes',
         'reported_operating_point'])):
    """Aggregates of one published study. The first row is the
    without-device baseline.
    """

    __slots__ = ()

    @property
    def n_noncancer(self):
        if self.n_cancer is None:
            return None
        return self.n_exams - self.n_cancer

    @property
    def baseline(self):
        return self.rows[0]

    def context(self, relative_utility=None):
        """
        :param relative_utility: overrides the study's relative utility
        :type relative_utility: float | None
        :rtype: metrics.UtilityContext
        """

        if self.prevalence is None:
            raise RuleoutException(
                'Study {} has no prevalence'.format(self.name))
        return metrics.UtilityContext(
            self.prevalence,
            relative_utility if relative_utility is not None
            else self.relative_utility)

    def roc_point(self, row):
        """
        :param row: a row of a ROC-space study
        :type row: dict
        :rtype: metrics.RocPoint
        """

        return metrics.RocPoint.from_se_sp(
            row['sensitivity'], row['specificity'])

    def rd_point(self, row):
        """
        :param row: a row of a recall/detection study
        :type row: dict
        :rtype: metrics.RdPoint
        """

        return metrics.RdPoint(
            row['recall_rate'], row['detection_rate'], self.n_exams)

    def paired_table(self, row):
        """Rebuilds the paired table of `row` against the baseline.

        :param row: a row of the study
        :type row: dict
        :rtype: PairedOutcomeTable | PairedRecallTable
        """

        if self.space == constants.RD_SPACE:
            return rd_table_from_aggregates(
                self.n_exams, self.rd_point(self.baseline),
                self.rd_point(row))
        return table_from_aggregates(
            self.n_cancer, self.n_noncancer,
            self.roc_point(self.baseline), self.roc_point(row))


def get_study_schema():
    """
    :returns: the study fixture schema
    :rtype: dict
    """

    resource = importlib.resources.files('ruleout').joinpath(
        'data/studies/study.schema.json')
    return json.loads(resource.read_text(encoding='utf-8'))


def load_study(name):
    """
    :param name: one of STUDY_NAMES
    :type name: str
    :rtype: StudyFixture
    """

    if name not in STUDY_NAMES:
        raise RuleoutException(
            'Unknown study {!r}. Valid studies are: {}'.format(
                name, ', '.join(STUDY_NAMES)))

    resource = importlib.resources.files('ruleout').joinpath(
        'data/studies/{}.json'.format(name))
    with resource.open('r', encoding='utf-8') as f:
        data = util.load_json(f)

    errs = util.validate_json(data, get_study_schema())
    if errs:
        raise RuleoutException(
            'Invalid study fixture {}:\n{}'.format(
                name, util.list_to_err(errs)))

    if data['space'] == constants.ROC_SPACE and (
            'prevalence' not in data or 'n_cancer' not in data):
        raise RuleoutException(
            'Study {} needs a prevalence and a cancer count'.format(name))

    logger.debug('Loaded study %s with %d rows', name, len(data['rows']))
    return StudyFixture(
        name=data['name'],
        description=data['description'],
        space=data['space'],
        prevalence=data.get('prevalence'),
        relative_utility=data['relative_utility'],
        relative_utility_band=data.get('relative_utility_band'),
        n_exams=data['n_exams'],
        n_cancer=data.get('n_cancer'),
        rows=data['rows'],
        notes=data['notes'],
        reported_operating_point=data.get('reported_operating_point'))
