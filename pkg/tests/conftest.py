import pytest

from smallgon import construct

# published perimeter and width values (L, W) for R_n, C_n, D_n and the bound
TABLE_L = {
    16: (3.121445152258052, 3.136547508015487, 3.136547508015487, 3.136548490545939),
    32: (3.136548490545939, 3.140331153461366, 3.140331156355381, 3.140331156954753),
    64: (3.140331156954753, 3.141277250919435, 3.141277250932682, 3.141277250932773),
    128: (3.141277250932773, 3.141513801144249, 3.141513801144301, 3.141513801144301),
}
TABLE_W = {
    16: (0.980785280403230, 0.995106832387674, 0.995106832387674, 0.995184726672197),
    32: (0.995184726672197, 0.998793140652984, 0.998794497340913, 0.998795456205172),
    64: (0.998795456205172, 0.999698747175479, 0.999698812803775, 0.999698818696204),
    128: (0.999698818696204, 0.999924699610472, 0.999924701821059, 0.999924701839145),
}

_builds = {}


@pytest.fixture(scope="session")
def built():
    """build_dn(n, engine) cached across the session."""

    def get(n, engine="block"):
        key = (n, engine)
        if key not in _builds:
            _builds[key] = construct.build_dn(n, engine=engine)
        return _builds[key]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
