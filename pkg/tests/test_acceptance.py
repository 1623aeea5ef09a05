"""Acceptance: the headline guarantees at full documented scale.

Each test is one acceptance item, ran at its stated range with a wall
clock budget; `pytest -v` then yields one pass/fail line per item.
Budgets are asserted inside the tests so a pathological slowdown fails
loudly instead of silently degrading.
"""

import itertools
import time

from hfinterp.arith import FAST, LITERAL, add_a, exp_a, mul_a
from hfinterp.cardinal import (
    card,
    card_add,
    card_exp,
    count_functions,
    inj_exists,
    injection_search,
    product,
)
from hfinterp.core import (
    decode,
    encode,
    is_level,
    materialize_level,
    mem,
    tower,
)
from hfinterp.evaluate import EvalContext
from hfinterp.order import (
    ack_less,
    ack_order,
    lex_less,
    numeral,
    numeral_value,
    position,
    successor_a,
)
from hfinterp.verify import (
    check_axioms,
    check_cardinal_model,
    check_opei,
    check_roundtrip,
    check_selftest,
    check_theorem6,
    load_corpus,
    replay,
    translatable_lines,
)


def _within(t0: float, budget: float) -> None:
    elapsed = time.perf_counter() - t0
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget:.0f}s"


def test_01_coding_is_a_bijection_on_the_first_65536():
    t0 = time.perf_counter()
    sets = [decode(n) for n in range(1 << 16)]
    assert len(set(sets)) == 1 << 16
    assert all(encode(x) == n for n, x in enumerate(sets))
    _within(t0, 5)


def test_02_cumulative_levels_are_code_prefixes():
    t0 = time.perf_counter()
    sizes = (1, 2, 4, 16, 65536)
    for m, size in enumerate(sizes, start=1):
        lvl = materialize_level(m)
        assert len(lvl.children) == size == tower(m - 1)
        assert sorted(encode(u) for u in lvl.children) == list(range(size))
        assert is_level(lvl)
        if m < 5:
            assert mem(lvl, materialize_level(m + 1))
    # among small codes, exactly the level prefixes pass the level test
    assert [n for n in range(100) if is_level(decode(n))] == [0, 1, 3, 15]
    _within(t0, 10)


def test_03_recursive_and_literal_order_routes_match_the_codes():
    t0 = time.perf_counter()
    n = 1 << 12
    sets = [decode(c) for c in range(n)]
    for i, x in enumerate(sets):
        for j, y in enumerate(sets):
            assert ack_less(x, y) == (i < j)

    # the literal route: sort each level lexicographically and read off
    order4 = ack_order(4)
    m = 1 << 6
    for i in range(m):
        for j in range(m):
            assert lex_less(order4, sets[i], sets[j]) == (i < j)
    assert all(position(sets[i]) == i for i in range(m))
    assert all(ack_order(5).items[i] is sets[i] for i in range(n))
    _within(t0, 60)


def test_04_membership_agrees_with_its_arithmetic_reading():
    t0 = time.perf_counter()
    rep = check_theorem6(EvalContext())
    assert rep.passed, [c.as_dict() for c in rep.failures()]
    by_id = {c.id: c for c in rep.cases}
    assert by_id["fast-exhaustive"].note.startswith("16777216 pairs")
    assert by_id["literal-exhaustive"].note.startswith("4096 pairs")
    assert len(rep.cases) == 5
    _within(t0, 60)


def test_05_successor_steps_and_numeral_carries_track_the_codes():
    t0 = time.perf_counter()
    n = 1 << 12
    sets = [decode(c) for c in range(n + 1)]
    # the read-off and carry branches both occur below this range: the
    # carry rule fires exactly when a level's ordering is exhausted
    # (codes 3 -> 4 and 15 -> 16 cross rank boundaries)
    assert all(successor_a(sets[c]) is sets[c + 1] for c in range(n))
    assert all(numeral_value(numeral(sets[c])) == c for c in range(n))
    assert all(numeral(sets[c]).bits[-1] == 0 for c in range(1, n))
    assert str(numeral(sets[6])) == "0110000"
    _within(t0, 10)


def test_06_code_arithmetic_is_a_homomorphism_in_both_modes():
    t0 = time.perf_counter()
    sets = [decode(c) for c in range(1 << 9)]

    for cx in range(1 << 8):
        for cy in range(1 << 8):
            assert encode(add_a(sets[cx], sets[cy])) == cx + cy
    for cx in range(1 << 6):
        for cy in range(1 << 6):
            assert encode(mul_a(sets[cx], sets[cy])) == cx * cy
    for cx in range(1 << 4):
        for cy in range(6):
            assert encode(exp_a(sets[cx], sets[cy])) == cx ** cy

    # the literal route (segments, cardinal arithmetic, ordering walks)
    # must agree with the code route wherever it is defined
    for cx in range(32):
        for cy in range(32):
            assert add_a(sets[cx], sets[cy], LITERAL) \
                is add_a(sets[cx], sets[cy], FAST)
    for cx in range(9):
        for cy in range(9):
            if cx * cy <= 64:
                assert mul_a(sets[cx], sets[cy], LITERAL) \
                    is mul_a(sets[cx], sets[cy], FAST)
    for cx in range(9):
        for cy in range(7):
            if cx ** cy <= 64:
                assert exp_a(sets[cx], sets[cy], LITERAL) \
                    is exp_a(sets[cx], sets[cy], FAST)
    _within(t0, 60)


def test_07_cardinal_arithmetic_matches_sizes_and_search():
    t0 = time.perf_counter()
    rep = check_cardinal_model(EvalContext())
    assert rep.passed, [c.as_dict() for c in rep.failures()]

    # two representatives of every size up to four: the initial code
    # prefix and a structurally different set of the same size
    reps = {0: (0,), 1: (1, 16), 2: (3, 40), 3: (7, 26), 4: (15, 54)}
    pool = [(size, decode(c)) for size, cs in reps.items() for c in cs]
    assert all(card(x) == size for size, x in pool)
    for (a, x), (b, y) in itertools.product(pool, repeat=2):
        assert card(card_add(x, y)) == a + b
        assert card(product(x, y)) == a * b
        assert card(card_exp(x, y)) == a ** b
        assert count_functions(x, y) == a ** b
        found = injection_search(x, y)
        assert inj_exists(x, y) == (found is not None) == (a <= b)
        if found is not None:
            assert set(found) == set(x.children)
            assert len(set(found.values())) == len(found)
            assert all(mem(v, y) for v in found.values())
    _within(t0, 30)


def test_08_finite_set_axioms_hold_below_the_cutoff():
    t0 = time.perf_counter()
    rep = check_axioms(EvalContext(set_cutoff=256))
    assert rep.passed, [c.as_dict() for c in rep.failures()]
    assert sum(c.id.startswith("separation[") for c in rep.cases) == 50
    _within(t0, 30)


def test_09_round_trips_preserve_truth_and_the_control_fails():
    t0 = time.perf_counter()
    assert len(load_corpus("arith.txt")) >= 40
    assert len(load_corpus("set.txt")) >= 40

    ctx = EvalContext()
    for maps in ("ad", "da"):
        rep = check_roundtrip(maps=maps, ctx=ctx, value_cutoff=256)
        assert rep.passed, (maps, [c.as_dict() for c in rep.failures()])

    # negative control: reading numbers as von Neumann ordinals is not
    # inverse to the coding, and the harness must be able to tell; the
    # ordinal images are relational, so their unbounded quantifiers get
    # a smaller truncation cutoff — the mismatch appears at value 2
    control_ctx = EvalContext(nat_cutoff=64, set_cutoff=64)
    lines = translatable_lines("arith.txt", "ao")
    assert len(lines) >= 20
    rep = check_roundtrip(lines, "ao", control_ctx, value_cutoff=16)
    failures = rep.failures()
    assert failures
    assert all(replay(c.counterexample, control_ctx) for c in failures)
    _within(t0, 120)


def test_10_induction_analysis_finds_the_documented_branches():
    t0 = time.perf_counter()
    rep = check_opei(ctx=EvalContext())
    assert rep.passed, [c.as_dict() for c in rep.failures()]
    transitivity = [c for c in rep.cases
                    if "forall u in x. forall v in u. v in x" in c.note]
    assert len(transitivity) == 1
    assert transitivity[0].note.startswith("step at")
    branches = [c.note.split(":")[0].split(" at ")[0] for c in rep.cases]
    assert branches.count("base") == 2
    assert branches.count("step") == 5
    assert branches.count("holds") == 7
    _within(t0, 10)


def test_11_corrupted_formulas_are_caught_and_failures_replay():
    rep = check_selftest(EvalContext())
    assert rep.passed, [c.as_dict() for c in rep.failures()]

    mutated = check_theorem6(EvalContext(), mutation="bit-formula",
                             max_code=64, literal_max_code=8,
                             sample_size=32, honest_max_code=4,
                             literal_honest_max_code=2)
    failures = mutated.failures()
    assert failures
    for c in failures:
        assert c.counterexample["mutation"] == "bit-formula"
        assert replay(c.counterexample, EvalContext())
