"""
The command line
================

The same functionality from a shell; here driven in-process through
``memvel.cli.run``, which returns the exit code.
"""

import os
import tempfile

from memvel.cli import run

code = run(["eval", "--x", "t", "--alpha", "0.5", "--beta", "0.5", "--T", "1", "--t", "0.5"])
print("exit code", code)

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "sweep.csv")
    run(["sweep", "--x", "sin(t)", "--alpha", "1", "--beta", "1", "--T", "1",
         "--start", "0", "--stop", "1", "--count", "5", "--output", path])
    print(open(path).read())

# exit code 2: the expression does not parse
print("exit code", run(["eval", "--x", "t^", "--alpha", "1", "--beta", "1", "--T", "1", "--t", "0.5"]))
