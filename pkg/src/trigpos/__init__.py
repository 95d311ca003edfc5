"""Certified positivity of trigonometric partial sums.

The package splits into six layers:

* :mod:`trigpos.exact` -- exact rational polynomials, Sturm chains and
  positivity certificates;
* :mod:`trigpos.trigsums` -- the trigonometric sums under study and their
  exact reductions to algebraic polynomials;
* :mod:`trigpos.quadrature` -- singular oscillatory integrals
  int_0^x g(t + eta) t^(mu-1) dt with rigorous error bounds;
* :mod:`trigpos.mustar` -- the threshold exponent mu*(rho), enclosed by
  verified sign changes of its defining integral;
* :mod:`trigpos.bounds` -- the auxiliary inequalities and the composite
  region constants;
* :mod:`trigpos.engine` / :mod:`trigpos.gegenbauer` -- grid certification
  on intervals, disk sampling of partial sums, and Gegenbauer spot checks.

`trigpos.cli` exposes everything as a scriptable `trigpos` command.
"""

from trigpos.precision import working_dps

__all__ = ["working_dps"]
__version__ = "0.1.0"
