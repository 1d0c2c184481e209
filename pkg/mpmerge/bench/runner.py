# -*- coding: utf-8 -*-

"""BENCHMARK RUNNER.

This module contains the overhead-inclusive wall-clock benchmark of the toy
encoder. Every timed repeat covers patch embedding, merging, the blocks,
reconstruction to the full token grid and assembly of the decoder input.

:Author: mpmerge developers

"""

from concurrent.futures import ThreadPoolExecutor
from time import perf_counter

import numpy as np
from progressbar import ProgressBar
from scipy.stats import sem

from mpmerge.base.observable import MergeRateObserver
from mpmerge.bench.flops import FlopEstimate, mean_gflops
from mpmerge.bench.report import BenchReport
from mpmerge.encoder.config import InsertionSchedule
from mpmerge.encoder.model import forward_batch
from mpmerge.interface.errors import ConfigError
from mpmerge.interface.log import log_info
from mpmerge.merge.reconstruction import assemble_decoder_input, reconstruct

DEFAULT_WARMUP = 20


class BenchRunner(object):
    """Benchmark runner.

    Parameters
    ----------
    enc : mpmerge.encoder.model.Encoder
        Encoder
    images : list
        Input images, one timed repeat runs all of them
    schedule : InsertionSchedule or iterable
        Blocks before which MPM runs
    batch : int, optional
        Batch size ``B`` (default is ``1``)
    warmup : int, optional
        Untimed warmup iterations (default is ``20``)
    repeats : int, optional
        Timed repeats over the whole input set (default is ``1``)
    threads : int, optional
        Worker threads for per-image embedding and merging (default is ``1``)
    progress : bool, optional
        Option to display a progress bar over the repeats (default is
        ``False``)
    log : logging.Logger, optional
        Logging instance (default is ``None``)
    embedded : bool, optional
        Option to treat the inputs as pre-embedded ``N x d`` image tokens
        (default is ``False``)

    Raises
    ------
    ConfigError
        For invalid benchmark parameters

    """

    def __init__(
        self,
        enc,
        images,
        schedule,
        batch=1,
        warmup=DEFAULT_WARMUP,
        repeats=1,
        threads=1,
        progress=False,
        log=None,
        embedded=False,
    ):

        if not images:
            raise ConfigError('The benchmark needs at least one image.')

        if batch < 1 or repeats < 1 or threads < 1 or warmup < 0:
            raise ConfigError(
                'Batch, repeats and threads must be positive, warmup '
                + 'non-negative.',
            )

        if not isinstance(schedule, InsertionSchedule):
            schedule = InsertionSchedule(schedule)
        schedule.check_depth(enc.config.depth)

        self.enc = enc
        self.images = list(images)
        self.schedule = schedule
        self.batch = batch
        self.warmup = warmup
        self.repeats = repeats
        self.threads = threads
        self.progress = progress
        self._log = log
        self.embedded = embedded

        self._observer = MergeRateObserver()
        self._reset()

    def _reset(self):
        """Reset the accumulated timings."""
        self.merge_time = 0.0
        self.backbone_time = 0.0
        self.block_times = np.zeros(self.enc.config.depth)
        self.reconstruct_time = 0.0
        self.repeat_times = []
        self.final_n = []
        self.padded_n = []
        self.estimates = []
        self.padded_estimates = []
        self._observer.reset()

    def _batches(self):
        """Split the images into batches."""
        return [
            self.images[start:start + self.batch]
            for start in range(0, len(self.images), self.batch)
        ]

    def _run_batch(self, images, executor, record=False):
        """Encode one batch and restore the decoder inputs."""
        output = forward_batch(
            images,
            self.enc,
            self.schedule,
            executor,
            embedded=self.embedded,
        )

        start = perf_counter()
        for image_output in output.outputs:
            z_up = reconstruct(
                image_output.image_tokens,
                image_output.composed_map,
            )
            assemble_decoder_input(image_output.special_tokens, z_up)
        reconstruct_time = perf_counter() - start

        if not record:
            return

        self.merge_time += output.merge_time
        self.backbone_time += output.block_time
        self.block_times += output.per_block_time
        self.reconstruct_time += reconstruct_time

        if len(self.repeat_times):
            return

        cfg = self.enc.config
        self.padded_n.append(max(
            image_output.final_n for image_output in output.outputs
        ))
        for image_output in output.outputs:
            self.final_n.append(image_output.final_n)
            estimate = FlopEstimate.from_output(
                image_output,
                cfg.dim,
                cfg.ffn_mult,
            )
            self.estimates.append(estimate)
            self.padded_estimates.append(FlopEstimate(
                output.padded_lengths,
                cfg.dim,
                cfg.ffn_mult,
                estimate.merge_lengths,
            ))

    def _warmup(self, executor):
        """Run the untimed warmup iterations on the first batch."""
        first_batch = self._batches()[0]

        for _ in range(self.warmup):
            self._run_batch(first_batch, executor)

        log_info(self._log, ' - Finished {0} warmup iterations', self.warmup)

    def _repeats(self, executor, progbar=None):
        """Run the timed repeats.

        Parameters
        ----------
        executor : concurrent.futures.Executor or None
            Executor for per-image work
        progbar : progressbar.ProgressBar
            Progress bar (default is ``None``)

        """
        batches = self._batches()

        for idx in range(self.repeats):
            start = perf_counter()
            for images in batches:
                self._run_batch(images, executor, record=True)
            self.repeat_times.append(perf_counter() - start)

            log_info(
                self._log,
                ' - Repeat {0}: {1:.4f} s',
                idx,
                self.repeat_times[-1],
            )

            if not isinstance(progbar, type(None)):
                progbar.update(idx + 1)

    def _timed(self, executor):
        """Warm up, then run the repeats with the merge observer attached."""
        self._warmup(executor)

        self.enc.add_observer('mpm', self._observer)
        try:
            if self.progress:
                with ProgressBar(
                    redirect_stdout=True,
                    max_value=self.repeats,
                ) as progbar:
                    self._repeats(executor, progbar=progbar)
            else:
                self._repeats(executor)
        finally:
            self.enc.remove_observer('mpm', self._observer)

    def run(self):
        """Run the benchmark.

        Returns
        -------
        BenchReport
            Timings, token counts and FLOP estimates

        """
        self._reset()

        log_info(
            self._log,
            'Benchmark: {0} images, batch {1}, schedule [{2}]',
            len(self.images),
            self.batch,
            self.schedule,
        )

        if self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                self._timed(executor)
        else:
            self._timed(None)

        return self._report()

    def _report(self):
        """Assemble the report."""
        total_wall_time = float(sum(self.repeat_times))
        n_images = len(self.images)

        if self.repeats > 1:
            repeat_time_sem = float(sem(self.repeat_times))
        else:
            repeat_time_sem = 0.0

        report = BenchReport(
            images=n_images,
            batch=self.batch,
            warmup=self.warmup,
            repeats=self.repeats,
            threads=self.threads,
            schedule=list(self.schedule),
            total_wall_time=total_wall_time,
            fps=n_images * self.repeats / total_wall_time,
            merge_time_total=self.merge_time,
            backbone_time_total=self.backbone_time,
            block_time_per_block=self.block_times.tolist(),
            reconstruct_time_total=self.reconstruct_time,
            per_image_final_N=self.final_n,
            padded_N_per_batch=self.padded_n,
            est_gflops_mean=mean_gflops(self.estimates),
            est_gflops_padded_mean=mean_gflops(self.padded_estimates),
            est_merge_gflops_mean=mean_gflops(
                self.estimates,
                'merge_gflops',
            ),
            repeat_time_median=float(np.median(self.repeat_times)),
            repeat_time_sem=repeat_time_sem,
            merge_rate_per_insertion=self._observer.retrieve_rates(),
        )

        log_info(self._log, ' - FPS: {0:.3f}', report.fps)

        return report


def run_bench(enc, images, schedule, **kwargs):
    """Run benchmark.

    Parameters
    ----------
    enc : mpmerge.encoder.model.Encoder
        Encoder
    images : list
        Input images
    schedule : InsertionSchedule or iterable
        Blocks before which MPM runs
    kwargs : dict
        Options of :class:`BenchRunner`

    Returns
    -------
    BenchReport
        Benchmark report

    """
    return BenchRunner(enc, images, schedule, **kwargs).run()


def sweep_schedules(enc, images, schedules, **kwargs):
    """Sweep schedules.

    Benchmark several insertion schedules on the same images, the insertion
    depth being the only trade-off control of MPM.

    Parameters
    ----------
    enc : mpmerge.encoder.model.Encoder
        Encoder
    images : list
        Input images
    schedules : list
        Insertion schedules
    kwargs : dict
        Options of :class:`BenchRunner`

    Returns
    -------
    list
        One :class:`BenchReport` per schedule

    """
    return [
        run_bench(enc, images, schedule, **kwargs) for schedule in schedules
    ]
