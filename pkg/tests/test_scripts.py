import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def test_toy_pipeline(tmp_path):
    proc = subprocess.run(
        [sys.executable, str(SCRIPTS / "run_toy_pipeline.py"), "--out", str(tmp_path)],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.startswith("technique")
    assert (tmp_path / "ECspf.tsv").exists() and (tmp_path / "BT.tsv").exists()


def test_reference_correlation():
    sys.path.insert(0, str(SCRIPTS))
    try:
        import reference_tables as ref
    finally:
        sys.path.pop(0)
    from statistics import correlation

    assert round(correlation(ref.CHRF_NON_ZERO_SHOT, ref.natural_share()), 2) == ref.PUBLISHED_CORRELATION
    for table in (ref.MOS_UNDERSTANDABILITY, ref.MOS_NATURALNESS):
        for col in zip(*table.values()):
            assert abs(sum(col) - 100) <= 0.2
