import json
import os
import pathlib
import subprocess
import sys

import pytest

_HERE = pathlib.Path(__file__).resolve()
SRC = pathlib.Path(os.environ.get("QUADFORMS_SRC", _HERE.parents[2]))

_build_dir = os.environ.get("QUADFORMS_BUILD_DIR", str(SRC / "build"))
sys.path.insert(0, _build_dir)
sys.path.insert(0, str(SRC / "python"))


@pytest.fixture(scope="session")
def cli_path():
    path = os.environ.get("QUADFORMS_CLI", str(SRC / "build" / "quadforms"))
    if not os.path.exists(path):
        pytest.skip("CLI binary not built")
    return path


@pytest.fixture(scope="session")
def schemas():
    loaded = {}
    for f in (SRC / "schemas").glob("*.v1.schema.json"):
        loaded[f.name.split(".")[0]] = json.loads(f.read_text())
    assert loaded, "schema directory is empty"
    return loaded


@pytest.fixture(scope="session")
def run_cli(cli_path):
    def run(*args, env_extra=None, expect_code=0):
        env = dict(os.environ)
        env.update(env_extra or {})
        proc = subprocess.run(
            [cli_path, *args], capture_output=True, text=True, env=env, timeout=300
        )
        assert proc.returncode == expect_code, (
            f"exit {proc.returncode} != {expect_code}\n{proc.stdout}\n{proc.stderr}"
        )
        return proc.stdout

    return run
