"""Golden values of the published tables, stored exactly as printed.

Parameters are kept as the printed strings. Where the printed decimals are
roundings of short fractions that reproduce the printed bound to every digit,
the fraction is stored next to them in ``exact`` and used for the computation;
both readings are reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field

NORM_ABS_TOL = 1e-6
BOUND_REL_TOL = 1e-5
H_ABS_TOL = 1e-4

POWERS = {"P3": 200, "P5": 120, "P6": 100, "P8": 75, "P10": 60}


@dataclass(frozen=True)
class FixtureRow:
    family: str
    params: tuple  # as printed
    norm: float | None = None
    bound: float | None = None
    floor: tuple | None = None  # (base, exponent) of the printed "> base**exponent"
    h: float | None = None
    exact: tuple | None = None  # fraction reading of the printed decimals
    compute_params: tuple | None = None  # parameters actually used, when not the printed ones
    annotations: dict = field(default_factory=dict)  # column -> note; annotated columns never fail
    floor_reading: tuple | None = None  # corrected (base, exponent) reading, checked normally


@dataclass(frozen=True)
class TableFixture:
    id: str
    title: str
    kind: str  # "bound" or "hyper"
    rows: tuple


S2 = TableFixture(
    "s2",
    "Norms and lower bounds on l_{2m}^2 with the literature parameters",
    "bound",
    (
        FixtureRow("P2", ("0.867835",), 0.991227730027263, 1.414213562373095, (1.18, 2)),
        FixtureRow("P3", ("1", "-1.6692"), 1.336725475130557, 2.058620016006847, (1.27, 3)),
        FixtureRow("P5", ("0.19462", "0.66008", "0.97833"), 0.286160496407654, 5.911278874557850, (1.42, 5)),
        FixtureRow("P6", ("1", "-2.2654"), 0.265449175431079, 10.06063557813303, (1.46, 6)),
        FixtureRow(
            "P7", ("0.05126", "0.22070", "0.50537", "0.71044"), 0.071365688615534, 17.850856996050050, (1.50, 7)
        ),
        FixtureRow(
            "P8",
            ("0.15258", "0.64697"),
            0.029851212141614,
            31.491320225749660,
            (1.53, 9),
            annotations={
                "floor": "printed exponent 9 does not match degree 8 (1.53**9 = 45.96 exceeds the bound); "
                "the degree-8 reading is checked instead"
            },
            floor_reading=(1.53, 8),
        ),
        FixtureRow("P10", ("0.0938", "-0.5938"), 0.015289940437748, 85.844178992096431, (1.56, 10)),
    ),
)

S3 = TableFixture(
    "s3",
    "Improved parameters: norms on l_{2m}^2 and lower bounds",
    "bound",
    (
        FixtureRow("P2", ("0.867835",), 0.991227730027263, 1.414213562373095),
        FixtureRow("P3", ("1", "-2"), 1.414213, 2.236067, (1.30, 3)),
        FixtureRow(
            "P5",
            ("0.104245", "0.333366", "0.541712"),
            0.147219,
            6.191704,
            (1.44, 5),
            annotations={
                "floor": "printed inequality 6.191704 > 1.44**5 is false: 1.44**5 = 6.1917364224"
            },
        ),
        FixtureRow("P6", ("1", "-2.363681"), 0.258967, 10.636287, (1.48, 6)),
        FixtureRow(
            "P7",
            ("0.0555555", "0.2444444", "0.5555555", "0.8000000"),
            0.078601,
            18.095148,
            (1.51, 7),
            exact=("1/18", "11/45", "5/9", "4/5"),
        ),
        FixtureRow(
            "P8", ("0.210344", "0.896551"), 0.041048, 31.727174, (1.54, 8), exact=("61/290", "26/29")
        ),
        FixtureRow(
            "P10", ("0.085714", "-0.577551"), 0.014151, 91.640152, (1.57, 10), exact=("3/35", "-283/490")
        ),
    ),
)

S4A = TableFixture(
    "s4a",
    "H_{R,1200}(2) estimates from degree-600 powers, parameters of the improved table",
    "hyper",
    (
        FixtureRow("P3", ("1", "-2"), h=1.288250),
        FixtureRow("P5", ("0.104245", "0.333366", "0.541712"), h=1.457854),
        FixtureRow("P6", ("1", "-2.363681"), h=1.509926),
        FixtureRow(
            "P8",
            ("0.191919", "0.8181818"),
            h=1.637228,
            compute_params=("0.210344", "0.896551"),
            annotations={
                "params": "the table heading says these are the improved-table parameters, which for P8 are "
                "a=0.210344, b=0.896551; those reproduce 1.637228, the printed pair gives 1.637106"
            },
        ),
        FixtureRow("P10", ("0.085714", "-0.577551"), h=1.638615),
    ),
)

S4B = TableFixture(
    "s4b",
    "H_{R,1200}(2) estimates from degree-600 powers, literature parameters",
    "hyper",
    (
        FixtureRow("P3", ("1", "-1.6692"), h=1.422344),
        FixtureRow("P5", ("0.19462", "0.66008", "0.97833"), h=1.549722),
        FixtureRow("P6", ("1", "-2.2654"), h=1.584313),
        FixtureRow("P8", ("0.15258", "0.64697"), h=1.640430),
        FixtureRow("P10", ("0.0938", "-0.5938"), h=1.651703),
    ),
)

S4C = TableFixture(
    "s4c",
    "H_{R,1200}(2) estimates from degree-600 powers, slightly better parameters",
    "hyper",
    (
        FixtureRow("P3", ("1", "-1.67053"), h=1.422433),
        FixtureRow("P5", ("0.19462", "0.66", "0.97833"), h=1.549744),
        FixtureRow("P6", ("1", "-2.2663"), h=1.584430),
        FixtureRow("P8", ("0.15258", "0.64698"), h=1.640436),
        FixtureRow("P10", ("0.0938", "-0.5934"), h=1.65362),
    ),
)

TABLES = {t.id: t for t in (S2, S3, S4A, S4B, S4C)}
