import random

from steklov import neighbors


def random_connected_omega(spec, size, rng: random.Random):
    """Grow a connected interior set by repeatedly attaching a random
    neighbor of a random current vertex."""
    omega = {(0,) * spec.dimension}
    while len(omega) < size:
        x = rng.choice(sorted(omega))
        omega.add(rng.choice(neighbors(spec, x)))
    return omega
