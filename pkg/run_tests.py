#!/usr/bin/env python3
"""
Test runner for ncpoisson

    python run_tests.py                 # full suite
    python run_tests.py --fast          # skip tests marked slow
    python run_tests.py --fast -k tensor
Any argument other than --fast is handed to pytest unchanged.
"""

import os
import subprocess
import sys


def pytest_args(argv):
    args = [sys.executable, "-m", "pytest", "tests/", "-v", "--tb=short", "--color=yes"]
    if "--fast" in argv:
        args += ["-m", "not slow"]
    return args + [a for a in argv if a != "--fast"]


def run_tests():
    """Run the suite and exit non-zero on failure"""
    fast = "--fast" in sys.argv[1:]
    print(f"🧪 Running ncpoisson tests{' (slow tests skipped)' if fast else ''}...")

    os.chdir(os.path.dirname(os.path.abspath(__file__)))
    result = subprocess.run(pytest_args(sys.argv[1:]), capture_output=False)

    if result.returncode == 0:
        print("✅ All tests passed!")
    else:
        print("❌ Some tests failed!")
        sys.exit(result.returncode)


if __name__ == "__main__":
    run_tests()
