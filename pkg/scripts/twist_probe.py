"""Compare each model carrying iota with its single-action twists.

Whether a (tau, iota)-complex can differ locally from its twist is open; this
only reports what the exact search finds for the bundled models.
"""

from kfh.equivariant import IOTA, TAU, local_equivalence, tensor_ti, twist
from kfh.models import fig8, knot_models, stevedore


def candidates():
    for name, t in knot_models(1):
        if t.iota is not None:
            yield name, t
    yield "fig8*stevedore_sigma", tensor_ti(fig8(), stevedore("sigma"))
    yield "fig8_sigma*fig8", tensor_ti(fig8("sigma"), fig8())


def main() -> None:
    for name, t in candidates():
        for which in ("tau", "iota", "both"):
            v = local_equivalence(t, twist(t, which), (TAU, IOTA))
            print(f"{name} twist={which} verdict={v.kind}")


if __name__ == "__main__":
    main()
