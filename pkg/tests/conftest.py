import pytest

from k3verify import checks

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ctx(tmp_path_factory):
    cache = tmp_path_factory.mktemp("minvecs")
    return checks.Context(cache_dir=str(cache))


@pytest.fixture(scope="session")
def code(ctx):
    return ctx.code


@pytest.fixture(scope="session")
def basis(ctx):
    return ctx.basis


@pytest.fixture(scope="session")
def minvecs(ctx):
    return ctx.minvecs


@pytest.fixture(scope="session")
def emb(ctx):
    return ctx.emb


@pytest.fixture(scope="session")
def roots42(ctx):
    return ctx.roots42


@pytest.fixture(scope="session")
def graph(ctx):
    return ctx.graph


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
