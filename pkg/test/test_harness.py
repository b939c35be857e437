'''pytest entry point: runs the in-house suite (`python3 -m test`) unchanged'''

from pathlib import Path
import subprocess
import sys


def test_in_house_suite():
    root = Path(__file__).resolve().parent.parent
    proc = subprocess.run([sys.executable, "-m", "test"], cwd=root, capture_output=True, text=True)
    print(proc.stdout)
    print(proc.stderr, file=sys.stderr)
    assert proc.returncode == 0
