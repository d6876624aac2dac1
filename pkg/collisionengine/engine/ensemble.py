#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Serial or process-parallel execution of independent work units

Results always come back in task order, so aggregated outputs do not
depend on the number of workers.
"""

from concurrent.futures import ProcessPoolExecutor
import logging

logger = logging.getLogger(__name__)


def run_tasks(function, tasks, workers: int = 1) -> list:
    """
    Apply function to every task, in worker processes when workers > 1

    return:
       results: list in task order
    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [function(task) for task in tasks]
    workers = min(workers, len(tasks))
    logger.info("running %d tasks on %d worker processes", len(tasks), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, tasks))


def chunk_size(dimension: int, budget: int = 2**22, cap: int = 4096) -> int:
    """
    Number of dimension x dimension complex matrices held at once
    """
    return max(1, min(cap, budget // (dimension * dimension)))
