"""Polynomial families: constructions, checkers, transport along morphisms."""

from __future__ import annotations

import pytest

from sievekit.gaussseq import b_from_a, c_from_a
from sievekit.qgauss import (
    NonIntegerCoefficient,
    PolyFamily,
    WindowBoundaryWarning,
    chain_prefix,
    chain_suffix,
    check_qgauss_definition,
    check_qgauss_roots,
    construct_from_b,
    construct_from_c,
    construct_ramanujan,
    equivalent_mod,
    fund_family,
    multiply,
    pullback,
    pushforward,
)
from sievekit.qpoly import (
    IntPoly,
    ONE,
    ZERO,
    eval_at_one,
    eval_at_primitive_root,
    q_binomial,
    q_int,
    q_power,
)
from sievekit.semigroup import (
    Chain,
    FreeRanked,
    PositiveIntegers,
    Window,
    linear_morphism,
    rank_morphism,
)

from helpers import qb0, sequence_corpus, zpos_spec

ZPOS = PositiveIntegers()
NK = Chain(ZPOS, "nonneg")


def both_ok(F):
    return check_qgauss_definition(F).ok and check_qgauss_roots(F).ok


def corrupt(F, s):
    """Bump the entry at s by q^(rank-1); breaks the congruence at rank >= 2."""
    bump = IntPoly.monomial(1, F.instance.rank(s) - 1)
    pairs = tuple((t, p + bump if t == s else p) for t, p in F.polys)
    return PolyFamily(F.instance, F.window, pairs)


class TestConstructions:
    def test_ramanujan_of_powers_of_two(self):
        a = zpos_spec("a", {n: 2**n for n in range(1, 7)}, 6)
        F = construct_ramanujan(a)
        assert F.value(2).coeffs == (3, 1)
        assert F.at_one(3) == 8
        assert both_ok(F)
        # canonical representative: degree below the rank already
        assert F.canonical().as_dict() == F.as_dict()

    def test_from_b_unit_weights(self):
        b = zpos_spec("b", {n: 1 for n in range(1, 7)}, 6)
        F = construct_from_b(b)
        # divisor sum of q-integers at 4: [4]_q + [2]_{q^2} + [1]_{q^4}
        assert F.value(4).coeffs == (3, 1, 2, 1)
        assert F.at_one(4) == 7
        assert eval_at_primitive_root(F.value(4), 2).equals_int(3)
        assert both_ok(F)

    def test_lucas_three_constructions_agree(self):
        a = next(spec for name, spec in sequence_corpus(8) if name == "lucas")
        fams = [
            construct_ramanujan(a),
            construct_from_b(b_from_a(a)),
            construct_from_c(c_from_a(a)),
        ]
        for F in fams:
            assert both_ok(F)
            assert [F.at_one(n) for n in range(1, 9)] == [1, 3, 4, 7, 11, 18, 29, 47]
        for F in fams[1:]:
            assert equivalent_mod(fams[0], F).ok
            assert F.canonical().as_dict() == fams[0].as_dict()

    def test_ramanujan_rejects_non_congruent_input(self):
        a = zpos_spec("a", {n: n for n in range(1, 7)}, 6)
        with pytest.raises(NonIntegerCoefficient) as exc:
            construct_ramanujan(a)
        assert exc.value.element == 2
        assert "3/2" in str(exc.value)

    def test_empty_convolution_support_gives_zero_family(self):
        F = construct_from_c(zpos_spec("c", {}, 5))
        assert all(p == ZERO for _, p in F.polys)
        assert both_ok(F)

    def test_fund_family_mixed_lengths(self):
        F = fund_family((("a", 1), ("b", 2)), Window(6))
        assert F.value((1, 1)) == q_int(3)
        # [4]/[3] times [3]!/([1]![2]!) collapses to a plain q-integer
        assert F.value((2, 1)) == q_int(4)
        assert both_ok(F)

    def test_fund_family_is_q_multinomial_on_letters(self):
        F = fund_family((("a", 1), ("b", 1)), Window(6))
        for (i, j), p in F.polys:
            assert p == q_binomial(i + j, j)
        assert both_ok(F)


class TestCheckers:
    def test_rank_indexed_q_integers_fail(self):
        # [n]_q over the plain integers is not congruent: at n = 2 the
        # evaluation [2](omega_2) = 0 misses the root total f_1(1) = 1
        F = PolyFamily.from_function(ZPOS, Window(6), q_int)
        rep_d = check_qgauss_definition(F)
        rep_r = check_qgauss_roots(F)
        assert not rep_d.ok and not rep_r.ok
        assert rep_r.witness().element == 2

    def test_q_integers_pass_as_chain_slice(self):
        # the same polynomials are fine once k = 1 is part of the index:
        # no pair (n, 1) with n >= 2 has any nontrivial root
        F = PolyFamily.from_function(
            NK, Window(6, ((0, 2),)), lambda s: q_binomial(s[0], s[1])
        )
        assert both_ok(F)
        assert F.value((6, 1)) == q_int(6)
        assert eval_at_primitive_root(F.value((4, 2)), 2).equals_int(2)
        assert eval_at_primitive_root(F.value((4, 1)), 2).equals_int(0)

    def test_monomial_families(self):
        geometric = PolyFamily.from_function(
            ZPOS, Window(6), lambda n: IntPoly.monomial(1, n)
        )
        assert both_ok(geometric)
        constant_exponent = PolyFamily.from_function(
            ZPOS, Window(6), lambda n: IntPoly.monomial(1, 1)
        )
        rep = check_qgauss_definition(constant_exponent)
        assert not rep.ok and rep.witness().element == 2

    def test_checkers_agree_on_corruptions(self):
        a = next(spec for name, spec in sequence_corpus(8) if name == "sigma")
        F = construct_ramanujan(a)
        for s in (2, 3, 5, 8):
            bad = corrupt(F, s)
            rep_d = check_qgauss_definition(bad)
            rep_r = check_qgauss_roots(bad)
            assert not rep_d.ok and not rep_r.ok
            assert rep_d.witness() is not None
            assert any(f.element == s for f in rep_r.failures)

    def test_roots_checker_needs_covered_roots(self):
        pairs = tuple((n, q_int(n)) for n in range(2, 5))
        inst_window = Window(4)
        with pytest.raises(ValueError):
            # family starts at rank 2, so the root 1 of 2 is missing
            PolyFamily(ZPOS, inst_window, pairs)

    def test_family_must_be_total(self):
        with pytest.raises(ValueError):
            PolyFamily(ZPOS, Window(3), ((1, ONE), (2, ONE)))
        with pytest.raises(ValueError):
            PolyFamily(ZPOS, Window(2), ((1, ONE), (1, ONE), (2, ONE)))


class TestTransport:
    def test_binary_words_pushforward(self):
        # two unit letters, recorded as (length, count of second letter)
        letters = FreeRanked((("a", 1), ("b", 1)))
        F = fund_family(letters, Window(6))
        to_pairs = linear_morphism(letters, NK, [(1, 1), (0, 1)])
        G = pushforward(F, to_pairs, Window(6, ((0, 6),)))
        for (n, k), p in G.polys:
            assert p == qb0(n, k)
        assert both_ok(G)

    def test_rank_pushforward_collapses_to_q_power(self):
        letters = FreeRanked((("a", 1), ("b", 1)))
        F = fund_family(letters, Window(6))
        G = pushforward(F, rank_morphism(letters), Window(6))
        for n, p in G.polys:
            assert p == q_power(2, n)
        assert both_ok(G)

    def test_projection_pushforward_warns_at_edge(self):
        F = PolyFamily.from_function(
            NK, Window(5, ((0, 5),)), lambda s: q_binomial(s[0], s[1])
        )
        drop_k = linear_morphism(NK, ZPOS, [(1, 0)])
        with pytest.warns(WindowBoundaryWarning):
            G = pushforward(F, drop_k, Window(5))
        # row sums of the q-Pascal triangle
        for n, p in G.polys:
            assert p == q_power(2, n)

    def test_rank_jump_pushforward_warns(self):
        F = PolyFamily.from_function(ZPOS, Window(3), lambda n: ONE)
        doubler = linear_morphism(ZPOS, ZPOS, [(2,)])
        with pytest.warns(WindowBoundaryWarning, match="rank"):
            pushforward(F, doubler, Window(6))

    def test_pullback_requires_window_coverage(self):
        G = PolyFamily.from_function(ZPOS, Window(3), q_int)
        doubler = linear_morphism(ZPOS, ZPOS, [(2,)])
        with pytest.raises(ValueError):
            pullback(G, doubler, Window(2))

    def test_multiply_requires_matching_shape(self):
        F = PolyFamily.from_function(ZPOS, Window(3), q_int)
        G = PolyFamily.from_function(ZPOS, Window(4), q_int)
        with pytest.raises(ValueError):
            multiply(F, G)
        sq = multiply(F, F)
        assert sq.value(3) == q_int(3) * q_int(3)

    def test_chain_prefix_shares_base(self):
        F = PolyFamily.from_function(
            NK, Window(4, ((0, 4),)), lambda s: q_binomial(s[0], s[1])
        )
        H = chain_prefix(F, F)
        assert H.value((4, 1, 2)) == q_binomial(4, 1) * q_binomial(4, 2)
        assert both_ok(H)
        G = PolyFamily.from_function(
            NK, Window(3, ((0, 3),)), lambda s: q_binomial(s[0], s[1])
        )
        with pytest.raises(ValueError):
            chain_prefix(F, G)

    def test_chain_suffix_through_middle(self):
        # composes by treating the middle coordinate as a rank downstairs
        F = PolyFamily.from_function(
            Chain(ZPOS, "pos"), Window(4, ((1, 4),)),
            lambda s: q_binomial(s[0], s[1]),
        )
        G = PolyFamily.from_function(
            NK, Window(4, ((0, 4),)), lambda s: q_binomial(s[0], s[1])
        )
        H = chain_suffix(F, G)
        assert H.value((4, 2, 1)) == q_binomial(4, 2) * q_binomial(2, 1)
        assert both_ok(H)

    def test_chain_suffix_guards(self):
        F_nonneg = PolyFamily.from_function(
            NK, Window(4, ((0, 4),)), lambda s: q_binomial(s[0], s[1])
        )
        with pytest.raises(ValueError, match="pos"):
            chain_suffix(F_nonneg, F_nonneg)
        F = PolyFamily.from_function(
            Chain(ZPOS, "pos"), Window(4, ((1, 6),)),
            lambda s: q_binomial(s[0], s[1]),
        )
        G = PolyFamily.from_function(
            NK, Window(4, ((0, 4),)), lambda s: q_binomial(s[0], s[1])
        )
        with pytest.raises(ValueError, match="middle bound"):
            chain_suffix(F, G)


def exp2(m: int) -> IntPoly:
    # q-analogue of 2^m with the empty product at m = 0
    return ONE if m == 0 else q_power(2, m)


INTS2 = Chain(Chain(ZPOS, "ints"), "ints")


def g_free(e) -> IntPoly:
    """Counts on (total, chosen, colored): two binomials and a 2-power.

    Uses the library binomial so the degenerate top with zero chosen
    keeps its empty-product value; that is what feeds the diagonal.
    """
    n, k, m = e
    if m < 0:
        return ZERO
    return q_binomial(n, k) * q_binomial(k + m - 1, m) * exp2(m)


class TestFreeVertexPipeline:
    """Derive the free-vertex sieving polynomials by transport.

    The closed form lives in tubings; here the same family is produced
    from a chained q-binomial family by a pullback and a fiber sum, and
    the two must agree entry by entry.
    """

    N = 5

    def build(self):
        N = self.N
        G = PolyFamily.from_function(
            INTS2, Window(N, ((-2 * N - 2, N + 3), (-1, N + 1))), g_free
        )
        reindex = linear_morphism(
            INTS2, INTS2, [(1, 0, 0), (1, -1, -1), (0, 0, 1)]
        )
        pulled = pullback(G, reindex, Window(N, ((-1, N + 1), (-1, N + 1))))
        drop_m = linear_morphism(INTS2, Chain(ZPOS, "ints"), [(1, 0, 0), (0, 1, 0)])
        return pushforward(pulled, drop_m, Window(N, ((-1, N + 1),)))

    def test_source_family_is_congruent(self):
        G = PolyFamily.from_function(INTS2, Window(4, ((-5, 5), (-1, 5))), g_free)
        assert both_ok(G)

    def test_pipeline_reproduces_closed_form(self):
        from sievekit.tubings import free_vertex_polynomial

        F = self.build()
        assert F.value((4, 1)).coeffs == (6, 9, 11, 11, 5, 2)
        assert F.at_one((4, 1)) == 44
        for n in range(1, self.N + 1):
            for k in range(1, n + 1):
                assert F.value((n, k)) == free_vertex_polynomial(n, k), (n, k)
        assert both_ok(F)

    def test_diagonal_survives_transport(self):
        # the k = n entry comes from the empty-choice boundary binomial
        F = self.build()
        for n in range(1, self.N + 1):
            assert F.value((n, n)) == ONE


class TestTubeCountTransport:
    def test_intermediate_family_is_not_congruent(self):
        # the unrestricted three-coordinate product fails the root test;
        # only its image under the reindexing below is a congruence
        def g(e):
            n, m, k = e
            return qb0(n + m - 1, m) * qb0(m + k - 1, m)

        G = PolyFamily.from_function(INTS2, Window(4, ((-2, 6), (-2, 6))), g)
        rep = check_qgauss_roots(G)
        assert not rep.ok
        assert any(f.element == (2, 0, 1) and f.divisor == 2 for f in rep.failures)

    def test_pullback_is_congruent(self):
        def g(e):
            n, m, k = e
            return qb0(n + m - 1, m) * qb0(m + k - 1, m)

        N = 5
        G = PolyFamily.from_function(
            INTS2, Window(N, ((-1, N + 1), (-N - 1, N + 1))), g
        )
        src = NK
        reindex = linear_morphism(src, INTS2, [(1, 0), (0, 1), (1, -1)])
        F = pullback(G, reindex, Window(N, ((0, N),)))
        for (n, k), p in F.polys:
            assert p == qb0(n + k - 1, k) * qb0(n - 1, k)
        assert both_ok(F)

    def test_totals_are_central_delannoy(self):
        N = 6
        F = PolyFamily.from_function(
            NK,
            Window(N, ((0, N),)),
            lambda s: qb0(s[0] + s[1] - 1, s[1]) * qb0(s[0] - 1, s[1]),
        )
        totals = [
            sum(F.at_one((n, k)) for k in range(N + 1)) for n in range(1, N + 1)
        ]
        assert totals == [1, 3, 13, 63, 321, 1683]

    def test_colored_variant(self):
        # an extra q-power of the tube count stays congruent
        N = 6
        F = PolyFamily.from_function(
            NK,
            Window(N, ((0, N),)),
            lambda s: qb0(s[0] + s[1] - 1, s[1])
            * qb0(s[0] - 1, s[1])
            * exp2(s[1]),
        )
        assert both_ok(F)
        totals = [
            sum(F.at_one((n, k)) for k in range(N + 1)) for n in range(1, N + 1)
        ]
        assert totals == [1, 5, 37, 305, 2641, 23525]


class TestTrinomialChain:
    def test_bounded_alphabet_compositions(self):
        # chain two q-binomial families, reindex, then sum out the third
        # coordinate; gives the congruence behind {-1, 0, 1} compositions
        N = 6
        F = PolyFamily.from_function(
            Chain(ZPOS, "pos"), Window(N, ((1, N),)),
            lambda s: q_binomial(s[0], s[1]),
        )
        G = PolyFamily.from_function(
            NK, Window(N, ((0, N),)), lambda s: q_binomial(s[0], s[1])
        )
        H = chain_suffix(F, G)
        assert both_ok(H)
