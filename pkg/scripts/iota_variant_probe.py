"""Compare the two iota conventions on tensor products of bundled models."""

import itertools

from kfh.equivariant import IOTA, TAU, local_equivalence, tensor_ti
from kfh.models import knot_models


def main() -> None:
    with_iota = [(n, t) for n, t in knot_models(1) if t.iota is not None]
    for (na, a), (nb, b) in itertools.combinations_with_replacement(with_iota, 2):
        va = tensor_ti(a, b, "A")
        vb = tensor_ti(a, b, "B")
        exact = va.iota.equals(vb.iota.__class__(va.complex, va.complex, vb.iota.variance, vb.iota.shift, vb.iota.entries))
        v = local_equivalence(va, vb, (TAU, IOTA))
        print(f"{na}*{nb} identical_iota={exact} verdict={v.kind}")


if __name__ == "__main__":
    main()
