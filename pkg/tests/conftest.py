import os
import sys
import warnings
from multiprocessing import Pool

import pytest

sys.path.insert(0, os.path.dirname(__file__))

HEAVY_JOBS = [
    # (key, function in acceptance_jobs, kwargs), longest first for pool balance
    ("rot2_bump", "rotation_two_mode", {"dims_bump": 5}),
    ("rot2", "rotation_two_mode", {}),
    ("mm3_bump", "multimode_three", {"dims_bump": 5}),
    ("phase_T200_a0p9", "rotation_single", {"alpha": 0.9, "period": 200.0}),
    ("phase_T200_root", "rotation_single", {"alpha": None, "period": 200.0}),
    ("phase_T200_a1p3", "rotation_single", {"alpha": 1.3, "period": 200.0}),
    ("mm3", "multimode_three", {}),
    ("rot1_a2_bump", "rotation_single", {"alpha": 2.0, "dims_bump": 5}),
    ("rot1_a2", "rotation_single", {"alpha": 2.0}),
    ("phase_T50_a0p9", "rotation_single", {"alpha": 0.9}),
    ("phase_T50_a1p3", "rotation_single", {"alpha": 1.3}),
    ("rot1_root_bump", "rotation_single", {"alpha": None, "dims_bump": 5}),
    ("rot1_root", "rotation_single", {"alpha": None}),
    ("bell_point_bump", "bell_point", {"tau": 20.0, "dims_bump": 5}),
    ("bell_point", "bell_point", {"tau": 20.0}),
    ("switch_0p002_bump", "switchoff_point", {"tau_off": 0.002, "dims_bump": 5}),
    ("switch_0p002", "switchoff_point", {"tau_off": 0.002}),
    ("switch_0p004", "switchoff_point", {"tau_off": 0.004}),
    ("switch_0", "switchoff_point", {"tau_off": 0.0}),
]


@pytest.fixture(scope="session")
def heavy():
    """All long propagation runs, executed once on a small process pool."""
    import acceptance_jobs

    jobs = []
    for key, fn, kwargs in HEAVY_JOBS:
        kwargs = dict(kwargs)
        if fn == "rotation_single" and kwargs.get("alpha") is None:
            kwargs["alpha"] = acceptance_jobs.ROOT_ALPHA
        jobs.append((key, fn, kwargs))
    workers = 1 if os.environ.get("CATFORGE_DETERMINISTIC") == "1" else min(2, os.cpu_count() or 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if workers == 1:
            results = [acceptance_jobs.run_job(j) for j in jobs]
        else:
            with Pool(workers) as pool:
                results = list(pool.imap_unordered(acceptance_jobs.run_job, jobs))
    return dict(results)


@pytest.fixture(scope="session")
def bell_grid(tmp_path_factory):
    """Criterion-2 sweep artifact over the 5x5 (alpha_f, tau) grid."""
    import csv
    import json

    from catforge.experiments import preset_path, run_bell_init

    cfg = json.loads(preset_path("fig4").read_text())
    out = tmp_path_factory.mktemp("fig4")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        art = run_bell_init(cfg, str(out), workers=min(2, os.cpu_count() or 1))
    with open(out / "series_sweep.csv") as fh:
        rows = [
            {k: float(v) for k, v in row.items()}
            for row in csv.DictReader(fh)
        ]
    return {"artifact": art, "rows": rows, "out": str(out)}
