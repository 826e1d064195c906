from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def direct_product(exponents, N):
    """``prod (1 - q^k)`` over ``exponents`` to ``O(q^N)``, by plain multiplication."""
    c = [1] + [0] * (N - 1)
    for k in exponents:
        nxt = list(c)
        for i in range(k, N):
            nxt[i] -= c[i - k]
        c = nxt
    return c
