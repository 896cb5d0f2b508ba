"""Readers for instance, degree-sequence and partition files.

Two instance formats are accepted and told apart by the first non-blank
character:

* native JSON, ``{"alphas": [...], "betas": [...]}`` (extra keys ignored);
* QAPLIB-style text: ``n``, then ``A`` and ``B`` as ``n x n`` row-major
  integer matrices, whitespace separated.  ``A`` must be a product matrix and
  ``B`` a 1-D distance matrix.
"""

from __future__ import annotations

import json
from typing import Union

from .core import PartitionInstance, WienerQapInstance, factor_product_matrix, recover_point_set
from .errors import Malformed

__all__ = [
    "load_instance",
    "parse_instance",
    "parse_int_list",
    "parse_degree_sequence",
    "parse_partition",
]

Data = Union[bytes, str]


def _text(data: Data) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise Malformed(f"input is not UTF-8: {exc}") from None
    return data


def _int_list(value, key):
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise Malformed(f'"{key}" must be an array of integers')
    return value


def _sort_order(values):
    # stable: ties keep their input order
    return sorted(range(len(values)), key=lambda i: values[i])


def _qaplib(text: str):
    tokens = text.split()
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise Malformed(f"QAPLIB input has a non-integer token: {exc}") from None
    n = nums[0]
    if n < 1:
        raise Malformed(f"QAPLIB dimension must be positive, got {n}")
    if len(nums) != 1 + 2 * n * n:
        raise Malformed(f"QAPLIB input for n={n} needs {2 * n * n} matrix entries, got {len(nums) - 1}")
    flat_a, flat_b = nums[1 : 1 + n * n], nums[1 + n * n :]
    A = [flat_a[i * n : (i + 1) * n] for i in range(n)]
    B = [flat_b[i * n : (i + 1) * n] for i in range(n)]
    return list(factor_product_matrix(A)), list(recover_point_set(B))


def load_instance(data: Data):
    """Parse an instance file; return ``(instance, metadata)``.

    ``metadata["alpha_order"][i]`` is the 1-based input position of the
    value that ends up at sorted position ``i + 1``; likewise ``beta_order``.
    """
    text = _text(data)
    stripped = text.lstrip()
    if not stripped:
        raise Malformed("empty instance file")
    if stripped[0] == "{":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise Malformed(f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict) or "alphas" not in obj or "betas" not in obj:
            raise Malformed('JSON instance needs keys "alphas" and "betas"')
        alphas = _int_list(obj["alphas"], "alphas")
        betas = _int_list(obj["betas"], "betas")
        fmt = "json"
    else:
        alphas, betas = _qaplib(text)
        fmt = "qaplib"
    if len(alphas) != len(betas) or not alphas:
        raise Malformed(f"{len(alphas)} alphas but {len(betas)} betas")
    if min(alphas) < 0:
        raise Malformed("alphas must be non-negative")
    inst = WienerQapInstance(tuple(alphas), tuple(betas))
    meta = {
        "format": fmt,
        "alpha_order": [i + 1 for i in _sort_order(alphas)],
        "beta_order": [i + 1 for i in _sort_order(betas)],
    }
    return inst, meta


def parse_instance(data: Data) -> WienerQapInstance:
    return load_instance(data)[0]


def parse_int_list(data: Data) -> list:
    try:
        return [int(t) for t in _text(data).split()]
    except ValueError as exc:
        raise Malformed(f"expected whitespace-separated integers: {exc}") from None


def parse_degree_sequence(data: Data) -> list:
    """Raw degrees, order-insensitive; validation is left to the caller."""
    return parse_int_list(data)


def parse_partition(data: Data) -> PartitionInstance:
    return PartitionInstance(tuple(parse_int_list(data)))
