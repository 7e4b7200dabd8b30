import numpy as np
import pytest

from linquant.qualalg import ProbInterval, scale5, scale7, scale9

STUDENTS_QUAL = """\
@partition {thresholds}
@labels {labels}
q student sport most al-all
q student young al-all
q sport student half
q sport single al-all
q sport young al-all all
q single sport most all
q single young most
q single children al-none
q young student few
q young sport al-all
q young children none al-none
q children single none al-none
q children young none al-none
"""

STUDENTS_KB7 = STUDENTS_QUAL.format(
    thresholds="0.2 0.4 0.6 0.8",
    labels="none al-none few half most al-all all",
)

STUDENTS_KB9 = STUDENTS_QUAL.format(
    thresholds="0.1 0.2 0.4 0.6 0.8 0.9",
    labels="none al-none v-few few half most v-many al-all all",
)

STUDENTS_NUMERIC = """\
@partition 0.2 0.4 0.6 0.8
@labels none al-none few half most al-all all
n student sport 0.7 0.9
n student young 0.85 0.95
n sport student 0.4 0.6
n sport single 0.8 0.85
n sport young 0.9 1
n single sport 0.7 0.9
n single young 0.6 0.8
n single children 0.05 0.8
n young student 0.25 0.35
n young sport 0.8 0.9
n young single 0.9 1
n young children 0 0.05
n children single 0 0.05
n children young 0 0.05
"""

# printed fixpoint of the numeric student example, P(col | row)
STUDENTS_SATURATED = {
    ("student", "sport"): (0.900, 0.900),
    ("student", "single"): (0.607, 1.000),
    ("student", "young"): (0.850, 0.850),
    ("student", "children"): (0.000, 0.271),
    ("sport", "student"): (0.400, 0.400),
    ("sport", "single"): (0.850, 0.850),
    ("sport", "young"): (0.900, 0.958),
    ("sport", "children"): (0.000, 0.154),
    ("single", "student"): (0.222, 0.366),
    ("single", "sport"): (0.700, 0.700),
    ("single", "young"): (0.800, 0.800),
    ("single", "children"): (0.050, 0.100),
    ("young", "student"): (0.350, 0.350),
    ("young", "sport"): (0.834, 0.888),
    ("young", "single"): (0.900, 0.900),
    ("young", "children"): (0.000, 0.050),
    ("children", "student"): (0.000, 0.099),
    ("children", "sport"): (0.000, 0.127),
    ("children", "single"): (0.000, 0.050),
    ("children", "young"): (0.000, 0.044),
}


@pytest.fixture(scope="session")
def p5():
    return scale5(0.3)


@pytest.fixture(scope="session")
def p7():
    return scale7()


@pytest.fixture(scope="session")
def p9():
    return scale9()


def random_subinterval(rng: np.random.Generator) -> ProbInterval:
    a, b = sorted(rng.uniform(0.0, 1.0, size=2))
    return ProbInterval(float(a), float(b))


def conditionals_of(masses: np.ndarray, class_count: int):
    """All pairwise P(to|from) of an explicit atom distribution."""

    def pcond(to: int, frm: int) -> float:
        num = sum(masses[a] for a in range(2**class_count) if a >> to & 1 and a >> frm & 1)
        den = sum(masses[a] for a in range(2**class_count) if a >> frm & 1)
        return num / den

    return pcond
