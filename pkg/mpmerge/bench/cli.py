# -*- coding: utf-8 -*-

"""COMMAND LINE INTERFACE.

This module contains the ``mpmerge`` command with the subcommands

* ``merge``: run one MPM call on a token file,
* ``bench``: benchmark the toy encoder with and without merging,
* ``visualize``: tint image patches by merge-map cluster,
* ``adaptivity``: compare merge rates of a clean and a degraded image.

Errors are reported on stderr and give exit status ``1``, usage errors give
exit status ``2``.

:Author: mpmerge developers

"""

import argparse
import json
import os
import sys

from mpmerge.base.rng import get_rng, resolve_seed
from mpmerge.bench.adaptivity import run_adaptivity
from mpmerge.bench.runner import DEFAULT_WARMUP, run_bench, sweep_schedules
from mpmerge.bench.visualize import visualize
from mpmerge.encoder.config import (
    DEFAULT_SCHEDULE,
    EncoderConfig,
    InsertionSchedule,
)
from mpmerge.encoder.model import init_encoder
from mpmerge.interface.errors import (
    ConfigError,
    IoError,
    MpmError,
    catch_error,
)
from mpmerge.interface.io import (
    read_image,
    read_map_file,
    read_tokens,
    write_map_file,
    write_ppm,
    write_token_file,
)
from mpmerge.interface.log import close_log, log_info, set_up_log
from mpmerge.merge.kernel import mpm_step
from mpmerge.signal.synthetic import redundant_image, smooth_scene

TOKEN_EXTENSIONS = ('.mpmt', '.csv')
IMAGE_EXTENSIONS = ('.ppm', '.pnm', '.npy')


def _image_size(text):
    """Parse ``'512'`` or ``'512x384'`` into ``(height, width)``."""
    try:
        fields = [int(field) for field in text.lower().split('x')]
    except ValueError:
        raise argparse.ArgumentTypeError(
            'invalid image size "{0}"'.format(text),
        )

    if len(fields) == 1:
        return fields[0], fields[0]

    if len(fields) == 2:
        return fields[0], fields[1]

    raise argparse.ArgumentTypeError('invalid image size "{0}"'.format(text))


def _schedule(text):
    """Parse a comma-separated schedule."""
    try:
        return InsertionSchedule.parse(text)
    except ConfigError as err:
        raise argparse.ArgumentTypeError(str(err))


def _schedules(text):
    """Parse semicolon-separated schedules, e.g. ``'2,5;2;5;'``."""
    return [_schedule(field) for field in text.split(';')]


def _emit(report, output_format):
    """Print a report dictionary, or a list of them, as JSON or as text."""
    if output_format == 'json':
        print(json.dumps(report, indent=2))
        return

    reports = report if isinstance(report, list) else [report]

    for index, entry in enumerate(reports):
        if index:
            print()
        for key, value in entry.items():
            print('{0}: {1}'.format(key, value))


def _add_common(parser):
    """Options shared by every subcommand."""
    parser.add_argument(
        '--format',
        choices=('json', 'text'),
        default='json',
        help='output format (default: %(default)s)',
    )
    parser.add_argument(
        '--log',
        metavar='NAME',
        default=None,
        help='write a log to NAME.log',
    )


def _add_encoder(parser):
    """Encoder and seed options."""
    parser.add_argument('--depth', type=int, default=12)
    parser.add_argument('--dim', type=int, default=192)
    parser.add_argument('--heads', type=int, default=3)
    parser.add_argument('--patch', type=int, default=16)
    parser.add_argument(
        '--image-size',
        type=_image_size,
        default=(512, 512),
        help='H or HxW in pixels (default: 512)',
    )
    parser.add_argument(
        '--schedule',
        type=_schedule,
        default=InsertionSchedule(DEFAULT_SCHEDULE),
        help='comma-separated 0-based block indices (default: "2,5")',
    )
    parser.add_argument(
        '--seed',
        type=int,
        default=0,
        help='seed, overridden by the MPM_SEED environment variable',
    )
    parser.add_argument(
        '--scene',
        choices=('redundant', 'smooth'),
        default='redundant',
        help='synthetic image kind (default: %(default)s)',
    )
    parser.add_argument(
        '--duplicates',
        type=float,
        default=0.5,
        help='duplicate-patch fraction of redundant scenes',
    )


def build_parser():
    """Build parser.

    Returns
    -------
    argparse.ArgumentParser
        Parser of the ``mpmerge`` command

    """
    parser = argparse.ArgumentParser(
        prog='mpmerge',
        description='Mutual Pair Merging: training-free token merging.',
    )
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    merge = subparsers.add_parser('merge', help='merge a token file once')
    merge.add_argument('input', help='token file (.mpmt or .csv)')
    merge.add_argument('output', help='merged token file')
    merge.add_argument('map_out', help='merge-map file')
    _add_common(merge)

    bench = subparsers.add_parser('bench', help='benchmark the encoder')
    _add_encoder(bench)
    bench.add_argument(
        '--input',
        default='synthetic',
        help='"synthetic" or a directory of images or token files',
    )
    bench.add_argument(
        '--images',
        type=int,
        default=8,
        help='number of synthetic images (default: %(default)s)',
    )
    bench.add_argument('--batch', type=int, default=1)
    bench.add_argument('--warmup', type=int, default=DEFAULT_WARMUP)
    bench.add_argument('--repeats', type=int, default=1)
    bench.add_argument('--threads', type=int, default=1)
    bench.add_argument(
        '--schedule-sweep',
        type=_schedules,
        default=None,
        help='semicolon-separated schedules, e.g. "2,5;2;5;"',
    )
    bench.add_argument(
        '--progress',
        action='store_true',
        help='show a progress bar over the repeats',
    )
    _add_common(bench)

    vis = subparsers.add_parser('visualize', help='tint patches by cluster')
    vis.add_argument('image', help='image (.ppm or .npy)')
    vis.add_argument('map', help='merge-map file')
    vis.add_argument('output', help='output PPM')
    vis.add_argument('--patch', type=int, default=16)
    _add_common(vis)

    adapt = subparsers.add_parser(
        'adaptivity',
        help='compare merge rates of a clean and a degraded image',
    )
    adapt.add_argument(
        'image',
        help='image (.ppm or .npy) or "synthetic"',
    )
    _add_encoder(adapt)
    adapt.add_argument('--luminosity', type=float, default=0.5)
    adapt.add_argument('--sigma', type=float, default=0.05)
    adapt.add_argument('--poisson-scale', type=float, default=0.0)
    adapt.add_argument(
        '--seeds',
        type=int,
        default=1,
        help='number of noise seeds (default: %(default)s)',
    )
    _add_common(adapt)

    return parser


def _synthetic_image(args, rng):
    """Draw one synthetic image for the configured geometry."""
    height, width = args.image_size

    if args.scene == 'smooth':
        return smooth_scene(height, width, rng)

    return redundant_image(height, width, args.patch, args.duplicates, rng)


def _encoder(args, seed, image_size=None, channels=3):
    """Build the encoder described by the options."""
    height, width = image_size or args.image_size
    config = EncoderConfig(
        image_h=height,
        image_w=width,
        patch=args.patch,
        depth=args.depth,
        dim=args.dim,
        heads=args.heads,
        channels=channels,
        seed=seed,
    )

    return init_encoder(config)


def cmd_merge(args, log=None):
    """Merge command.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed arguments
    log : logging.Logger, optional
        Logging instance (default is ``None``)

    Returns
    -------
    dict
        ``N``, ``N'`` and the merged fraction

    """
    tokens = read_tokens(args.input)
    merged, merge_map = mpm_step(tokens)

    write_token_file(merged, args.output)
    write_map_file(merge_map, args.map_out)

    report = {
        'N': merge_map.n_tokens,
        "N'": merge_map.n_clusters,
        'merged_fraction': merge_map.merged_fraction(),
    }

    log_info(log, 'Merged {0}: {1}', args.input, report)

    return report


def _read_inputs(directory):
    """Read every image or token file of a directory, sorted by name."""
    if not os.path.isdir(directory):
        raise IoError('Input directory {0} not found!'.format(directory))

    names = sorted(os.listdir(directory))
    tokens = [
        read_tokens(os.path.join(directory, name))
        for name in names if name.lower().endswith(TOKEN_EXTENSIONS)
    ]
    images = [
        read_image(os.path.join(directory, name))
        for name in names if name.lower().endswith(IMAGE_EXTENSIONS)
    ]

    if tokens and images:
        raise ConfigError('Mix of images and token files in {0}.'.format(
            directory,
        ))

    if not tokens and not images:
        raise IoError('No images or token files in {0}.'.format(directory))

    return (tokens, True) if tokens else (images, False)


def cmd_bench(args, log=None):
    """Bench command.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed arguments
    log : logging.Logger, optional
        Logging instance (default is ``None``)

    Returns
    -------
    dict or list
        Benchmark report, or one report per schedule of a sweep

    """
    seed = resolve_seed(args.seed)

    if args.input == 'synthetic':
        rng = get_rng(seed)
        inputs = [_synthetic_image(args, rng) for _ in range(args.images)]
        embedded = False
        image_size = None
        channels = 3
    else:
        inputs, embedded = _read_inputs(args.input)
        image_size = None if embedded else inputs[0].shape[:2]
        channels = 3 if embedded else inputs[0].shape[2]

    enc = _encoder(args, seed, image_size, channels)

    options = {
        'batch': args.batch,
        'warmup': args.warmup,
        'repeats': args.repeats,
        'threads': args.threads,
        'progress': args.progress,
        'log': log,
        'embedded': embedded,
    }

    if args.schedule_sweep is not None:
        reports = sweep_schedules(enc, inputs, args.schedule_sweep, **options)
        return [report.to_dict() for report in reports]

    report = run_bench(enc, inputs, args.schedule, **options)

    if args.format == 'text':
        print(report.to_text())
        return None

    return report.to_dict()


def cmd_visualize(args, log=None):
    """Visualize command.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed arguments
    log : logging.Logger, optional
        Logging instance (default is ``None``)

    Returns
    -------
    dict
        Output path and map statistics

    """
    image = read_image(args.image)
    merge_map = read_map_file(args.map)

    write_ppm(visualize(image, merge_map, args.patch), args.output)

    log_info(log, 'Wrote {0}', args.output)

    return {
        'output': args.output,
        'N': merge_map.n_tokens,
        "N'": merge_map.n_clusters,
    }


def cmd_adaptivity(args, log=None):
    """Adaptivity command.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed arguments
    log : logging.Logger, optional
        Logging instance (default is ``None``)

    Returns
    -------
    dict
        Clean and degraded merged fractions and their deltas

    """
    seed = resolve_seed(args.seed)

    if args.image == 'synthetic':
        image = _synthetic_image(args, get_rng(seed))
    else:
        image = read_image(args.image)

    enc = _encoder(args, seed, image.shape[:2], image.shape[2])

    return run_adaptivity(
        image,
        enc,
        args.schedule,
        luminosity=args.luminosity,
        sigma=args.sigma,
        poisson_scale=args.poisson_scale,
        seed=seed,
        seeds=args.seeds,
        log=log,
    )


COMMANDS = {
    'merge': cmd_merge,
    'bench': cmd_bench,
    'visualize': cmd_visualize,
    'adaptivity': cmd_adaptivity,
}


def main(argv=None):
    """Run the ``mpmerge`` command.

    Parameters
    ----------
    argv : list, optional
        Arguments, ``sys.argv[1:]`` if not provided

    Returns
    -------
    int
        Exit status

    """
    args = build_parser().parse_args(argv)
    log = set_up_log(args.log, verbose=False) if args.log else None

    try:
        report = COMMANDS[args.command](args, log)
    except (MpmError, IOError, ValueError) as err:
        catch_error(err, log)
        return 1
    finally:
        if log is not None:
            close_log(log, verbose=False)

    if report is not None:
        _emit(report, args.format)

    return 0


if __name__ == '__main__':
    sys.exit(main())
