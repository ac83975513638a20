import abc


class RuleoutException(Exception):
    pass


class CohortFormatException(RuleoutException):
    """A row of a delimiter-separated input file could not be accepted.

    :param row: 1-based data row number (header and comments excluded)
    :type row: int
    :param line: 1-based physical line number in the file
    :type line: int
    :param reason: what is wrong with the row
    :type reason: str
    """

    def __init__(self, row, line, reason):
        self.row = row
        self.line = line
        self.reason = reason

    def __str__(self):
        return 'Row {0} (line {1}): {2}'.format(
            self.row, self.line, self.reason)


class UndefinedReplicatesException(RuleoutException):
    """Too many bootstrap replicates left a metric undefined.

    :param metric: name of the metric
    :type metric: str
    :param undefined: number of undefined replicates
    :type undefined: int
    :param total: number of replicates drawn
    :type total: int
    """

    def __init__(self, metric, undefined, total):
        self.metric = metric
        self.undefined = undefined
        self.total = total

    def __str__(self):
        return ('Metric {!r} is undefined on {} of {} bootstrap replicates; '
                'refusing to summarize more than 1% undefined').format(
                    self.metric, self.undefined, self.total)


class Error(object):
    """Abstract class for describing errors."""

    @abc.abstractmethod
    def error(self):
        """Creates an error message

        :returns: The error message
        :rtype: str
        """

        raise NotImplementedError


class DefaultError(Error):
    """Construct a basic Error class based on a string

    :param message: String to use for the error message
    :type message: str
    """

    def __init__(self, message):
        self._message = message

    def error(self):
        return self._message
