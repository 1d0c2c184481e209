# -*- coding: utf-8 -*-

"""BENCHMARK REPORT.

This module contains the versioned benchmark report written by
``mpmerge bench``.

:Author: mpmerge developers

"""

import json

REPORT_SCHEMA = 1

_FIELDS = (
    'images',
    'batch',
    'warmup',
    'repeats',
    'threads',
    'schedule',
    'total_wall_time',
    'fps',
    'merge_time_total',
    'backbone_time_total',
    'block_time_per_block',
    'reconstruct_time_total',
    'per_image_final_N',
    'padded_N_per_batch',
    'est_gflops_mean',
    'est_gflops_padded_mean',
    'est_merge_gflops_mean',
    'repeat_time_median',
    'repeat_time_sem',
    'merge_rate_per_insertion',
)


class BenchReport(object):
    """Benchmark report.

    Every field is set as a keyword argument, missing fields default to
    ``None``. Times are in seconds and exclude warmup.

    Parameters
    ----------
    kwargs : dict
        Report fields

    Raises
    ------
    TypeError
        For an unknown field

    Examples
    --------
    >>> from mpmerge.bench.report import BenchReport
    >>> BenchReport(images=1).to_dict()['schema']
    1

    """

    def __init__(self, **kwargs):

        unknown = set(kwargs) - set(_FIELDS)
        if unknown:
            raise TypeError('Unknown report fields: {0}'.format(
                sorted(unknown),
            ))

        for field in _FIELDS:
            setattr(self, field, kwargs.get(field))

    @property
    def component_time_total(self):
        """Merge, backbone and reconstruction time."""
        return (
            self.merge_time_total
            + self.backbone_time_total
            + self.reconstruct_time_total
        )

    def to_dict(self):
        """Return the report as a dictionary with the schema version."""
        report = {'schema': REPORT_SCHEMA}
        report.update({field: getattr(self, field) for field in _FIELDS})

        if isinstance(report['merge_rate_per_insertion'], dict):
            report['merge_rate_per_insertion'] = {
                str(block): rate
                for block, rate in report['merge_rate_per_insertion'].items()
            }

        return report

    def to_json(self, indent=2):
        """Return the report as a JSON string."""
        return json.dumps(self.to_dict(), indent=indent)

    def to_text(self):
        """Return the report as aligned ``key: value`` lines."""
        report = self.to_dict()
        width = max(len(key) for key in report)

        return '\n'.join(
            '{0:<{1}} : {2}'.format(key, width, _format(value))
            for key, value in report.items()
        )


def _format(value):
    """Format a report value for text output."""
    if isinstance(value, float):
        return '{0:.6g}'.format(value)

    if isinstance(value, (list, tuple)) and len(value) > 8:
        head = ', '.join(str(element) for element in value[:8])
        return '[{0}, ... ({1} values)]'.format(head, len(value))

    return str(value)
