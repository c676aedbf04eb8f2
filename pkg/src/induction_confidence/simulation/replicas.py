from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Sequence, TypeVar

from induction_confidence.utils.logging_config import logger
from induction_confidence.utils.progress import RunState, progress

T = TypeVar("T")


def replica_seeds(seed: int, replicas: int) -> list[int]:
    """Seeds seed, seed + 1, ... for independent replicas."""
    if replicas < 1:
        raise ValueError(f"replicas must be at least 1, got {replicas}")
    return [seed + i for i in range(replicas)]


def run_replicas(func: Callable[[int], T], seeds: Sequence[int], max_workers: int = 4) -> list[T]:
    """
    Run `func(seed)` for each seed on a thread pool.

    Each replica owns its generator, so replicas never share state.
    Results come back in the order of `seeds`.
    """
    results: dict[int, T] = {}
    with ThreadPoolExecutor(max_workers=max(1, min(max_workers, len(seeds)))) as executor:
        future_to_position = {
            executor.submit(func, seed): position for position, seed in enumerate(seeds)
        }
        for future in as_completed(future_to_position):
            position = future_to_position[future]
            seed = seeds[position]
            try:
                results[position] = future.result()
                progress.update_status("replicas", f"seed {seed}", RunState.DONE)
            except Exception as e:
                logger.exception(f"Replica with seed {seed} failed: {e}")
                progress.update_status("replicas", f"seed {seed}", RunState.FAILED, f"Error: {str(e)[:50]}")
                raise
    return [results[position] for position in range(len(seeds))]
