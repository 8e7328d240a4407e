# tests/spectra.py


def match_spectra(got, expected):
    """
    Pair every expected eigenvalue with its nearest unused computed one and
    return the largest distance.
    """
    got = [complex(z) for z in got]
    worst = 0.0
    for z in expected:
        i = min(range(len(got)), key=lambda k: abs(got[k] - z))
        worst = max(worst, abs(got.pop(i) - z))
    return worst
