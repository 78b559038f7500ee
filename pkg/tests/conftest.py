"""Shared fixtures: the zoo automata and a CLI runner."""

from __future__ import annotations

import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from omega_fdfa import (
    gen_fig1,
    gen_fig5_fdfa,
    gen_ln,
    gen_sigma_star_aa,
)
from omega_fdfa.cli import main


@pytest.fixture
def fig1():
    return gen_fig1()


@pytest.fixture
def saa():
    return gen_sigma_star_aa()


@pytest.fixture
def fig5():
    return gen_fig5_fdfa()


@pytest.fixture
def ln2():
    return gen_ln(2)


@pytest.fixture
def cli(capsys):
    """Run the CLI; returns (exit_code, stdout, stderr)."""

    def run(*argv: str):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
