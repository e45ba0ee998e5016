"""Exact computations with regular triangular algebras.

Modules: ``scalar`` (Q and Q(q)), ``cartan`` (Cartan subalgebras, roots and
weights), ``rewrite`` (noncommutative rewriting and confluence), ``gwa``
(rank-one generalized Weyl algebras), ``cat_o`` (Verma modules, blocks and
finiteness), ``polyexp`` (zeros of polynomial-exponential sums), ``rtm``
(regular triangular monoids and the algebras built on them) and ``cli``.
"""

__version__ = "0.1.0"
