from __future__ import annotations

import pytest

from groupcode import make_encoder, make_group


@pytest.fixture(scope="session")
def systematic_encoder():
    """Rate-1/2 systematic binary encoder with a two-register state group.

    Next state (s1, s2) -> (s2, u + s1); output (u, s2).
    """
    u = make_group([2])
    s = make_group([2, 2])
    y = make_group([2, 2])
    nu = [[0, 1], [0, 1], [1, 0]]
    omega = [[1, 0], [0, 0], [0, 1]]
    return make_encoder(u, s, y, nu, omega)


@pytest.fixture(scope="session")
def frozen_state_encoder():
    """Encoder whose next state ignores the input entirely: (u, s) -> s.

    The analysis-equivalent wire form of the order-8 cyclic instance with a
    four-state cyclic state group; its reachability chain is stuck at the
    identity.
    """
    u = make_group([2])
    s = make_group([4])
    y = make_group([2, 4])
    nu = [[0], [1]]
    omega = [[1, 0], [0, 1]]
    return make_encoder(u, s, y, nu, omega)
