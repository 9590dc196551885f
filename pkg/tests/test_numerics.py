import math

import numpy as np
import pytest

from solgeo.numerics import (adaptive_simpson, central_diff, central_diff2,
                             hermite_eval, mixed_diff, rk4_step)


def test_central_diff_scalar():
    assert abs(central_diff(math.sin, 0.7, 1e-5) - math.cos(0.7)) < 1e-10


def test_central_diff_vector_valued():
    out = central_diff(lambda t: np.array([t ** 2, t ** 3]), 2.0, 1e-5)
    assert np.allclose(out, [4.0, 12.0], atol=1e-9)


def test_central_diff2():
    assert abs(central_diff2(lambda x: x ** 4, 1.5, 1e-4) - 27.0) < 1e-6


def test_mixed_diff():
    got = mixed_diff(lambda x, y: math.sin(x) * math.exp(y), 0.4, -0.3, 1e-4)
    assert abs(got - math.cos(0.4) * math.exp(-0.3)) < 1e-7


@pytest.mark.parametrize("func,a,b,exact", [
    (math.sin, 0.0, math.pi, 2.0),
    (math.exp, 0.0, 1.0, math.e - 1.0),
    (lambda x: 1.0 / (1.0 + x * x), -1.0, 1.0, math.pi / 2.0),
])
def test_adaptive_simpson(func, a, b, exact):
    assert abs(adaptive_simpson(func, a, b, 1e-10) - exact) < 1e-10


def test_adaptive_simpson_reversed_interval():
    forward = adaptive_simpson(math.exp, 0.0, 1.0, 1e-12)
    backward = adaptive_simpson(math.exp, 1.0, 0.0, 1e-12)
    assert abs(forward + backward) < 1e-12


def test_rk4_order_four():
    def rhs(_t, y):
        return y

    errors = []
    for h in (0.1, 0.05):
        y = np.array([1.0])
        t = 0.0
        for _ in range(round(1.0 / h)):
            y = rk4_step(rhs, t, y, h)
            t += h
        errors.append(abs(y[0] - math.e))
    order = math.log2(errors[0] / errors[1])
    assert order > 3.8


def test_hermite_eval_reproduces_cubics():
    nodes = np.linspace(0.0, 2.0, 9)
    values = nodes ** 3 - nodes
    slopes = 3 * nodes ** 2 - 1
    for x in np.linspace(0.05, 1.95, 31):
        assert abs(hermite_eval(x, nodes, values, slopes)
                   - (x ** 3 - x)) < 1e-12


def test_hermite_eval_hits_nodes():
    nodes = np.array([0.0, 0.5, 1.3])
    values = np.array([2.0, -1.0, 0.25])
    slopes = np.zeros(3)
    for node, value in zip(nodes, values):
        assert hermite_eval(node, nodes, values, slopes) == pytest.approx(
            value, abs=1e-15)
