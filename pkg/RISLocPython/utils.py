"""
Utility functions shared by the experiment runners and the CLI.

Copyright 2026, The RISLocPython developers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import os
import csv
import json
import math
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import requests
from validator_collection import checkers

from .ev import is_exceptional
from .errors import ConfigurationError

logger = logging.getLogger(__name__)


def fetch_text(link: str, timeout: float = 30.0) -> str:
    """
    Return the text of a local file or of an http(s) URL.
    """
    if os.path.isfile(link):
        with open(link, 'r', encoding='utf-8') as f:
            return(f.read())
    if checkers.is_url(link) and link.upper().startswith('HTTP'):
        try:
            response = requests.get(link, timeout=timeout)
            response.raise_for_status()
        except requests.exceptions.RequestException as e:
            raise ConfigurationError("could not fetch " + link + ": " + str(e))
        return(response.text)
    raise ConfigurationError("no such file or URL: " + link)


def trial_seed(master_seed: int, index: int) -> np.random.SeedSequence:
    """
    Seed of trial (or grid point) index, independent of the order in which trials are scheduled.
    """
    return(np.random.SeedSequence([int(master_seed), int(index)]))


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    return(np.random.default_rng(trial_seed(master_seed, index)))


def sort_key(v) -> float:
    """
    Ranks a diagnostic above every number so medians and minima never pick it as the best bound.
    """
    if is_exceptional(v) or v is None:
        return(math.inf)
    return(float(v))


def robust_median(values):
    """
    Median of bounds where diagnostics rank as +inf; None for an empty list.
    """
    keys = sorted(sort_key(v) for v in values)
    if not keys:
        return(None)
    return(float(np.median(keys)))


def finite_mean(values):
    """
    (mean of the numeric values, count of diagnostics); the mean is None when every value is a diagnostic.
    """
    values = list(values)
    numbers = [float(v) for v in values if not is_exceptional(v)]
    excluded = len(values) - len(numbers)
    return((float(np.mean(numbers)) if numbers else None), excluded)


def format_value(v) -> str:
    """
    CSV rendering: the diagnostic sentinel for exceptional values, repr() for floats so that
    every digit survives.
    """
    if is_exceptional(v):
        return(v.sentinel)
    if isinstance(v, (float, np.floating)):
        return(repr(float(v)))
    if isinstance(v, (bool, np.bool_)):
        return('true' if v else 'false')
    return(str(v))


def jsonable(v):
    """
    Convert results to plain JSON types; infinities become None and diagnostics their dict form.
    """
    if is_exceptional(v):
        return(v.to_dict())
    if isinstance(v, dict):
        return({str(k): jsonable(x) for k, x in v.items()})
    if isinstance(v, (list, tuple)):
        return([jsonable(x) for x in v])
    if isinstance(v, np.ndarray):
        return(jsonable(v.tolist()))
    if isinstance(v, (bool, np.bool_)):
        return(bool(v))
    if isinstance(v, (int, np.integer)):
        return(int(v))
    if isinstance(v, (float, np.floating)):
        return(None if not math.isfinite(v) else float(v))
    return(v)


def write_csv(path: str, fieldnames, rows) -> str:
    """
    Write rows (dicts keyed by fieldnames) as UTF-8 CSV with a header row.
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=list(fieldnames), lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({k: format_value(row[k]) for k in fieldnames})
    logger.info('wrote %s', path)
    return(path)


def write_json(path: str, obj) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(jsonable(obj), f, indent=2, sort_keys=True)
        f.write('\n')
    logger.info('wrote %s', path)
    return(path)


def ordered_map(fn, items, threads: int = 1) -> list:
    """
    map() over a thread pool that keeps the input order; threads <= 1 runs inline.
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return([fn(i) for i in items])
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return(list(pool.map(fn, items)))


def linspace(spec) -> np.ndarray:
    """
    Grid from a [start, stop, points] triple.
    """
    start, stop, points = spec
    return(np.linspace(float(start), float(stop), int(points)))


def geomspace(spec) -> np.ndarray:
    start, stop, points = spec
    return(np.geomspace(float(start), float(stop), int(points)))
