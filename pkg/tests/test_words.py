"""Word parsing, evaluation, substitution, and the collecting process."""

import random

import pytest

from uteq import (
    BaseAtom,
    CommAtom,
    ConstLetter,
    GroupElement,
    Word,
    WordSyntaxError,
    XLetter,
    XPowAtom,
    atom_bracket,
    atom_min_level,
    atom_x_exponent,
    brute_solve,
    collect,
    evaluate_normal_form,
    evaluate_word,
    parse_word,
    render_word,
    substitute,
)
from uteq.nil_algebra import AlgebraElement
from uteq.oracle import SearchSpec

from helpers import all_group_elements, rand_group, rand_word


@pytest.fixture
def heis2():
    g1 = GroupElement.transvection(2, 3, 1, 2)
    g2 = GroupElement.transvection(2, 3, 2, 3)
    return {"g1": g1, "g2": g2}


class TestParse:
    def test_basic_word(self, heis2):
        w = parse_word("x g1 x g2", heis2)
        assert w.letters == (
            XLetter(1), ConstLetter("g1"), XLetter(1), ConstLetter("g2"),
        )

    def test_inverse_letter(self):
        w = parse_word("x^-1", {}, p=2, n=3)
        assert w.letters == (XLetter(-1),)

    def test_unknown_name_rejected(self, heis2):
        with pytest.raises(WordSyntaxError) as err:
            parse_word("x g1 y", heis2)
        assert "y" in str(err.value)
        assert err.value.position == 3

    def test_junk_token_rejected(self, heis2):
        with pytest.raises(WordSyntaxError):
            parse_word("x g1 x^2", heis2)

    def test_round_trip(self):
        rng = random.Random(0)
        for _ in range(50):
            w = rand_word(rng, 3, 3)
            again = parse_word(render_word(w), w.coefficients)
            assert again == w

    def test_constant_free_needs_dims(self):
        with pytest.raises(ValueError):
            Word([XLetter(1)], {})


class TestExponent:
    def test_paper_trace_word(self, heis2):
        assert parse_word("x g1 x g2", heis2).exponent == 2

    def test_cancelling(self, heis2):
        assert parse_word("x x^-1 g1", heis2).exponent == 0

    def test_negative(self, heis2):
        assert parse_word("x^-1 g1 x^-1 g2 x^-1 g1", heis2).exponent == -3


class TestEvaluate:
    def test_at_identity_unknown(self):
        w = parse_word("x", {}, p=2, n=3)
        assert evaluate_word(w, GroupElement.identity(2, 3)).is_identity()

    def test_constants_only_at_one(self, heis2):
        w = parse_word("x g1 x g2", heis2)
        val = evaluate_word(w, GroupElement.identity(2, 3))
        assert val == heis2["g1"] * heis2["g2"]

    def test_brute_root_evaluates_to_identity(self, heis2):
        w = parse_word("x^-1 g1", heis2)
        root = brute_solve(SearchSpec(p=2, m=3, word=w))
        assert root is not None
        assert evaluate_word(w, root).is_identity()

    def test_dimension_mismatch(self, heis2):
        w = parse_word("x g1", heis2)
        with pytest.raises(ValueError):
            evaluate_word(w, GroupElement.identity(2, 4))


class TestCollect:
    def test_two_step_trace(self, heis2):
        nf = collect(parse_word("x g1 x g2", heis2))
        assert nf.epsilon == 2
        assert nf.u1 == heis2["g1"] * heis2["g2"]
        assert [atom_bracket(a) for a in nf.tail] == ["[g1,x]", "[g1,x,g2]"]
        first, second = nf.tail
        assert first == CommAtom(BaseAtom("g1"), XPowAtom(1))
        assert second == CommAtom(first, BaseAtom("g2"))

    def test_constant_only(self, heis2):
        nf = collect(parse_word("g1", heis2))
        assert nf.epsilon == 0
        assert nf.u1 == heis2["g1"]
        assert nf.tail == ()

    def test_leftmost_inverse(self, heis2):
        nf = collect(parse_word("x^-1 g1", heis2))
        assert nf.epsilon == -1
        assert nf.u1 == heis2["g1"]
        assert nf.tail == ()

    def test_soundness_exhaustive(self):
        rng = random.Random(1)
        for p in (2, 3):
            els = all_group_elements(p, 3)
            for _ in range(250):
                w = rand_word(rng, p, 3)
                nf = collect(w)
                for x in els:
                    lhs = evaluate_word(w, x)
                    rhs = (x ** nf.epsilon) * evaluate_normal_form(nf, x)
                    assert lhs == rhs

    def test_tail_exponent_zero(self):
        rng = random.Random(2)
        for _ in range(200):
            nf = collect(rand_word(rng, 3, 3, max_letters=8))
            assert sum(atom_x_exponent(a) for a in nf.tail) == 0
            assert all(atom_x_exponent(a) == 0 for a in nf.tail)

    def test_atom_shape_left_normed(self):
        # first entry a constant (or deeper commutator), second the unknown
        rng = random.Random(3)
        for _ in range(100):
            nf = collect(rand_word(rng, 2, 3, max_letters=7))
            for atom in nf.tail:
                assert isinstance(atom, CommAtom)
                node = atom
                while isinstance(node.left, CommAtom):
                    assert isinstance(node.right, (XPowAtom, BaseAtom))
                    node = node.left
                assert isinstance(node.left, BaseAtom)
                assert isinstance(node.right, XPowAtom)

    def test_pruned_collect_keeps_identity_in_target(self):
        # pruning may only drop atoms that are trivial for every unknown
        rng = random.Random(4)
        for _ in range(40):
            w = rand_word(rng, 2, 3, max_letters=6)
            full = collect(w)
            pruned = collect(w, max_level=3)
            assert len(pruned.tail) <= len(full.tail)
            for x in all_group_elements(2, 3):
                assert evaluate_normal_form(full, x) == evaluate_normal_form(pruned, x)


class TestPerturbation:
    """Evaluating an atom at x + d moves the result only by terms whose
    level is at least level(base) + level(d)."""

    def _random_atom(self, rng, names, max_extensions=2):
        atom = CommAtom(BaseAtom(rng.choice(names)), XPowAtom(rng.choice((-1, 1))))
        for _ in range(rng.randrange(max_extensions + 1)):
            if rng.random() < 0.5:
                atom = CommAtom(atom, XPowAtom(rng.choice((-1, 1))))
            else:
                atom = CommAtom(atom, BaseAtom(rng.choice(names)))
        return atom

    @pytest.mark.parametrize("p,m", [(2, 6), (3, 5)])
    def test_shift_lands_deep(self, p, m):
        from uteq.words import _evaluate_atom

        rng = random.Random(5)
        for _ in range(500):
            r = rng.randrange(1, 3)
            t = rng.randrange(1, 3)
            coeffs = {
                "g": rand_group(rng, p, m, min_level=r),
                "h": rand_group(rng, p, m),
            }
            atom = self._random_atom(rng, ["g"])
            x = rand_group(rng, p, m)
            d = rand_group(rng, p, m, min_level=t).u
            shifted = GroupElement(x.u + d)
            before = _evaluate_atom(atom, x, coeffs, {})
            after = _evaluate_atom(atom, shifted, coeffs, {})
            diff = after.u - before.u
            assert diff.filtration_level() >= r + t


class TestSubstitute:
    def test_inversion(self, heis2):
        w = substitute(parse_word("x g1", heis2), -1)
        assert render_word(w) == "x^-1 g1"

    def test_square_doubles_exponent(self, heis2):
        w = substitute(parse_word("x g1 x g2", heis2), 2)
        assert w.exponent == 4
        assert render_word(w) == "x x g1 x x g2"

    def test_zero_rejected(self, heis2):
        with pytest.raises(ValueError):
            substitute(parse_word("x g1", heis2), 0)

    def test_negative_power(self, heis2):
        w = substitute(parse_word("x^-1 g1", heis2), -2)
        assert render_word(w) == "x x g1"

    def test_evaluation_commutes_with_substitution(self):
        rng = random.Random(6)
        for _ in range(50):
            w = rand_word(rng, 3, 3)
            k = rng.choice((-3, -2, -1, 2, 3))
            ws = substitute(w, k)
            x = rand_group(rng, 3, 3)
            assert evaluate_word(ws, x) == evaluate_word(w, x ** k)


class TestAtomHelpers:
    def test_min_level_adds(self):
        atom = CommAtom(
            CommAtom(BaseAtom("g"), XPowAtom(1)),
            BaseAtom("h"),
        )
        levels = {"g": 2, "h": 3}
        assert atom_min_level(atom, levels) == 2 + 1 + 3

    def test_bracket_negative_power(self):
        atom = CommAtom(BaseAtom("g"), XPowAtom(-1))
        assert atom_bracket(atom) == "[g,x^-1]"
