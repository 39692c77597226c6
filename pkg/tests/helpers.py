"""Random parameter generators shared by the test modules."""

from crossing_cycles import AffineMap, CenterSystem, SaddleParams

# lines collected by the acceptance suite and echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def random_saddle(rng) -> SaddleParams:
    while True:
        mu, A, delta, B, C = rng.uniform(-1, 1, 5)
        if A * A - delta * mu > 0.05:
            return SaddleParams(mu, A, delta, B, C)


def random_affine(rng) -> AffineMap:
    while True:
        a = rng.uniform(-1, 1, 6)
        if abs(a[0] * a[4] - a[1] * a[3]) > 0.1:
            return AffineMap(*a)


def random_center(rng, kind) -> CenterSystem:
    return CenterSystem(kind, random_affine(rng))
