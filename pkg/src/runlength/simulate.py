"""Seeded Monte Carlo runs of the string-generation process.

Reproducibility contract: draws come from the counter-based Philox
generator.  Trials are split into fixed blocks of ``BLOCK_TRIALS``; block
b uses the Philox stream keyed by (seed, b), and the trials of a block
consume that stream's 64-bit words in order (rejection redraws included).
Results are therefore bitwise identical for a given (params, trials,
seed), no matter how many workers evaluate the blocks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, InvariantError
from .params import Params

BLOCK_TRIALS = 8192
_CHUNK_WORDS = 16384
_WORD_RANGE = 1 << 64
_STEP_CAP = 1 << 63
_THREADS_ENV_VAR = "RUNLENGTH_THREADS"


class SymbolStream:
    """Uniform symbols in [0, m) drawn from one keyed Philox word stream.

    Raw 64-bit words are mapped to symbols by rejection: words at or above
    the largest multiple of m are discarded, so every symbol is exactly
    equally likely.
    """

    def __init__(self, alphabet_size: int, seed: int, stream_index: int = 0):
        if alphabet_size < 1:
            raise DomainError(f"alphabet size must be >= 1, got {alphabet_size}")
        self.alphabet_size = alphabet_size
        key = np.array(
            [seed & (_WORD_RANGE - 1), stream_index & (_WORD_RANGE - 1)],
            dtype=np.uint64,
        )
        self._bit_generator = np.random.Philox(key=key)
        self._reject_from = _WORD_RANGE - (_WORD_RANGE % alphabet_size)
        self._buffer: list[int] = []
        self._position = 0

    def draw(self) -> int:
        buffer = self._buffer
        position = self._position
        reject_from = self._reject_from
        while True:
            if position == len(buffer):
                buffer = self._bit_generator.random_raw(_CHUNK_WORDS).tolist()
                self._buffer = buffer
                position = 0
            word = buffer[position]
            position += 1
            if word < reject_from:
                self._position = position
                return word % self.alphabet_size


def generate_one(params: Params, stream: SymbolStream) -> int:
    """Length of one generated string: draws until n zeros arrive in a row.

    Only a run counter is kept; the string itself is never materialized.
    """
    n = params.n
    draw = stream.draw
    run = 0
    length = 0
    while True:
        length += 1
        if length > _STEP_CAP:
            raise InvariantError("step cap exceeded; the symbol source is broken")
        if draw() == 0:
            run += 1
            if run == n:
                return length
        else:
            run = 0


@dataclass(frozen=True)
class SimReport:
    """Summary of one batch of trials.

    ``variance`` uses the unbiased trials-1 divisor.  ``histogram`` maps
    observed string length to its trial count.
    """

    params: Params
    trials: int
    seed: int
    mean: float
    variance: float
    std_error_of_mean: float
    min_len: int
    max_len: int
    histogram: dict[int, int]


def simulate(params: Params, trials: int, seed: int) -> SimReport:
    """Run ``trials`` independent generations and summarize their lengths.

    Worker count is capped by the ``RUNLENGTH_THREADS`` environment
    variable (default 1); the block layout makes the report identical
    either way.
    """
    if trials < 2:
        raise DomainError(
            f"at least 2 trials are needed for a sample variance, got {trials}"
        )
    blocks = [
        (index, min(BLOCK_TRIALS, trials - start))
        for index, start in enumerate(range(0, trials, BLOCK_TRIALS))
    ]

    def run_block(block: tuple[int, int]) -> dict[int, int]:
        index, count = block
        stream = SymbolStream(params.m, seed, stream_index=index)
        histogram: dict[int, int] = {}
        for _ in range(count):
            length = generate_one(params, stream)
            histogram[length] = histogram.get(length, 0) + 1
        return histogram

    workers = _worker_count()
    if workers == 1:
        partials = [run_block(block) for block in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run_block, blocks))

    histogram: dict[int, int] = {}
    for partial in partials:  # fixed merge order: ascending block index
        for length, count in partial.items():
            histogram[length] = histogram.get(length, 0) + count
    assert sum(histogram.values()) == trials

    # exact integer sums first, one correctly-rounded division at the end,
    # so the floats are platform-independent
    total = sum(length * count for length, count in histogram.items())
    total_sq = sum(length * length * count for length, count in histogram.items())
    mean = float(Fraction(total, trials))
    variance = float(
        Fraction(trials * total_sq - total * total, trials * (trials - 1))
    )
    return SimReport(
        params=params,
        trials=trials,
        seed=seed,
        mean=mean,
        variance=variance,
        std_error_of_mean=math.sqrt(variance / trials),
        min_len=min(histogram),
        max_len=max(histogram),
        histogram=dict(sorted(histogram.items())),
    )


def _worker_count() -> int:
    raw = os.environ.get(_THREADS_ENV_VAR, "1")
    try:
        workers = int(raw)
    except ValueError as exc:
        raise DomainError(f"{_THREADS_ENV_VAR} must be an integer, got {raw!r}") from exc
    return max(1, workers)
