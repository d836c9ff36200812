"""Generational genetic algorithm over 10-bit key chromosomes.

Minimizes the n-gram cost of the decrypted ciphertext. One generation:
evaluate everyone, carry the best individual over unchanged, then fill the
remaining slots with tournament-selected, crossed-over, per-bit-mutated
children. Deterministic for a fixed seed: all randomness comes from one
``random.Random`` stream consumed in a fixed order (two tournaments of two
draws each, the crossover coin, the cut point if it fires, then ten
per-bit mutation coins).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .ngrams import BIGRAM_ONLY, CostWeights, KeyScorer, NGramTable
from .sdes import KEY_BITS, KEY_SPACE, matching_bits


@dataclass
class GaParams:
    pop_size: int = 100
    max_gen: int = 200
    cross_rate: float = 0.95
    mutate_rate: float = 0.05
    selection: str = "tournament2"
    rng_seed: int = 0
    elitism: int = 1
    init: str = "random"  # "enumerate" fills slot i with key i (oracle checks)

    def __post_init__(self):
        if self.pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if self.max_gen < 1:
            raise ValueError("max_gen must be at least 1")
        for name in ("cross_rate", "mutate_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {rate}")
        if self.selection != "tournament2":
            raise ValueError(f"unknown selection strategy {self.selection!r}")
        if self.elitism not in (0, 1):
            raise ValueError("elitism must be 0 or 1")
        if self.init not in ("random", "enumerate"):
            raise ValueError(f"unknown init strategy {self.init!r}")


@dataclass
class Individual:
    chromosome: int
    cost: float


@dataclass
class AttackResult:
    best_key: int
    best_cost: float
    generations_run: int
    evaluations: int
    elapsed: float
    bits_matched: Optional[int] = None


def init_population(params: GaParams, rng: random.Random | None = None) -> list[int]:
    """Initial chromosomes: uniform over the key space, duplicates allowed."""
    if params.init == "enumerate":
        return [i % KEY_SPACE for i in range(params.pop_size)]
    if rng is None:
        rng = random.Random(params.rng_seed)
    return [rng.randrange(KEY_SPACE) for _ in range(params.pop_size)]


def tournament(population: list[Individual], rng: random.Random) -> Individual:
    """Size-2 tournament: lower cost wins, first drawn wins ties."""
    a = population[rng.randrange(len(population))]
    b = population[rng.randrange(len(population))]
    return b if b.cost < a.cost else a


def select_parents(
    population: list[Individual], rng: random.Random
) -> tuple[Individual, Individual]:
    return tournament(population, rng), tournament(population, rng)


def crossover(mate1: int, mate2: int, rng: random.Random) -> int:
    """Single-point: bits 1..cut from mate1, the rest from mate2."""
    cut = rng.randint(1, KEY_BITS - 1)
    high_mask = ((1 << cut) - 1) << (KEY_BITS - cut)
    return (mate1 & high_mask) | (mate2 & ~high_mask & (KEY_SPACE - 1))


def mutate(child: int, mutate_rate: float, rng: random.Random) -> int:
    """Flip each of the 10 bits independently with probability mutate_rate."""
    for pos in range(KEY_BITS):  # bit 1 (MSB) first
        if rng.random() < mutate_rate:
            child ^= 1 << (KEY_BITS - 1 - pos)
    return child


def repair(child: int) -> int:
    """Identity: every 10-bit string is a valid key, nothing to fix."""
    return child


def _best(population: list[Individual]) -> Individual:
    best = population[0]
    for ind in population[1:]:
        if ind.cost < best.cost:
            best = ind
    return best


def evolve(
    scorer: KeyScorer,
    params: GaParams,
    *,
    improve_init: Callable[[int, KeyScorer], int] | None = None,
    improve_offspring: Callable[[int, KeyScorer], int] | None = None,
    true_key: int | None = None,
    stop_cost: float | None = None,
    on_generation: Callable[[int, list[Individual]], None] | None = None,
) -> AttackResult:
    """Shared search loop; the memetic variant plugs in improvement hooks.

    ``generations_run`` counts evaluated generations including the initial
    population, so without early stopping evaluations = pop_size * max_gen.
    Supplying ``stop_cost`` (normally the exhaustive-search minimum) stops
    the loop once the best cost reaches it.
    """
    t0 = time.perf_counter()
    rng = random.Random(params.rng_seed)
    calls_before = scorer.calls

    chromosomes = init_population(params, rng)
    if improve_init is not None:
        chromosomes = [improve_init(c, scorer) for c in chromosomes]
    population = [Individual(c, scorer.score(c)) for c in chromosomes]
    best = _best(population)
    generation = 1
    if on_generation is not None:
        on_generation(generation, population)

    while generation < params.max_gen and not (
        stop_cost is not None and best.cost <= stop_cost
    ):
        next_chromosomes = []
        if params.elitism:
            next_chromosomes.append(_best(population).chromosome)
        while len(next_chromosomes) < params.pop_size:
            mate1, mate2 = select_parents(population, rng)
            if rng.random() < params.cross_rate:
                child = crossover(mate1.chromosome, mate2.chromosome, rng)
            else:
                child = mate1.chromosome
            child = repair(mutate(child, params.mutate_rate, rng))
            if improve_offspring is not None:
                child = improve_offspring(child, scorer)
            next_chromosomes.append(child)

        population = [Individual(c, scorer.score(c)) for c in next_chromosomes]
        generation += 1
        candidate = _best(population)
        if candidate.cost < best.cost:
            best = candidate
        if on_generation is not None:
            on_generation(generation, population)

    return AttackResult(
        best_key=best.chromosome,
        best_cost=best.cost,
        generations_run=generation,
        evaluations=scorer.calls - calls_before,
        elapsed=time.perf_counter() - t0,
        bits_matched=(
            matching_bits(best.chromosome, true_key) if true_key is not None else None
        ),
    )


def run_ga(
    ciphertext: bytes,
    reference: dict[int, NGramTable],
    weights: CostWeights = BIGRAM_ONLY,
    params: GaParams | None = None,
    *,
    true_key: int | None = None,
    stop_cost: float | None = None,
    scorer: KeyScorer | None = None,
    on_generation: Callable[[int, list[Individual]], None] | None = None,
) -> AttackResult:
    """Run the genetic attack against one ciphertext."""
    if params is None:
        params = GaParams()
    if scorer is None:
        scorer = KeyScorer(ciphertext, reference, weights)
    return evolve(
        scorer,
        params,
        true_key=true_key,
        stop_cost=stop_cost,
        on_generation=on_generation,
    )
