"""Python bindings for the Kirch topology arithmetic library."""

import json

from . import _kirch
from ._kirch import (
    a_of_pair_formula,
    classify,
    classify_prime,
    closure_member,
    closure_oracle_member,
    closure_sample,
    consecutive_power_pairs,
    crt_solve,
    dirichlet_prime,
    divides_via_filters,
    filter_leq,
    filter_leq_oracle,
    gamma_dot,
    is_squarefree,
    is_top,
    prime_divisors,
    realize,
    upset_in_fprime,
    zsigmondy_is_exception,
)


def a_of(elements):
    """Sorted primes, or the string "all" for a singleton."""
    return json.loads(_kirch._a_of(list(elements)))


def descriptor(elements):
    d = json.loads(_kirch._descriptor(list(elements)))
    d["alpha"] = {int(k): v for k, v in d["alpha"].items()}
    return d


def gamma(p, max_two_exp, max_p_exp=0):
    return json.loads(_kirch._gamma(p, max_two_exp, max_p_exp))


def run_suite(name, seed=7):
    return json.loads(_kirch._run_suite(name, seed))


__all__ = [n for n in dir() if not n.startswith("_") and n != "json"]
