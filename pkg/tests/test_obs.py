import numpy as np
import pytest

from oracles import analytic_condensate, brute_force_variance, rdm_entropy

from ebhsim.fock import enumerate_basis, rank
from ebhsim.model import ModelParams, build_hamiltonian
from ebhsim.obs import (
    energy_gap,
    entanglement_entropy,
    momentum_grid,
    one_body_matrix,
    site_densities,
    structure_factor,
    theta_lr,
    witness,
    witness_min_over_q,
)
from ebhsim.solver import ground_state


def test_densities_mott(mott_state, basis8):
    assert np.allclose(site_densities(mott_state, basis8), 1.0, atol=1e-10)


def test_densities_superfluid(sf_state, basis8):
    dens = site_densities(sf_state, basis8)
    assert np.allclose(dens, 1.0, atol=1e-8)
    assert dens.sum() == pytest.approx(8.0, abs=1e-10)


def test_densities_pinned_cdw(cdw_pinned_state, basis8):
    dens = site_densities(cdw_pinned_state, basis8)
    assert np.allclose(dens, [0, 2, 0, 2, 0, 2, 0, 2], atol=1e-6)


def test_one_body_mott_is_identity(mott_state, basis8):
    G = one_body_matrix(mott_state, basis8)
    assert np.allclose(G, np.eye(8), atol=1e-12)


def test_one_body_superfluid_uniform(sf_state, basis8):
    G = one_body_matrix(sf_state, basis8)
    assert np.allclose(G, np.ones((8, 8)), atol=1e-8)


def test_one_body_contract(cdw_cat_state, basis8):
    G = one_body_matrix(cdw_cat_state, basis8)
    assert np.allclose(G, G.conj().T, atol=1e-12)
    assert np.trace(G).real == pytest.approx(8.0, abs=1e-10)
    assert np.allclose(np.diag(G).real, site_densities(cdw_cat_state, basis8), atol=1e-12)


def test_witness_superfluid_anchor(sf_state, basis8):
    rep = witness(sf_state, basis8, 0.0)
    assert rep.mean_R == pytest.approx(8.0, abs=1e-8)
    assert rep.var_R == pytest.approx(0.0, abs=1e-8)
    assert rep.r_sep == pytest.approx(1.75, abs=1e-8)
    assert rep.lam == pytest.approx(-1.75, abs=1e-8)


def test_witness_mott_anchor(mott_state, basis8):
    for q in (0.0, np.pi):
        rep = witness(mott_state, basis8, q)
        assert rep.var_R == pytest.approx(1.75, abs=1e-10)
        assert rep.lam == pytest.approx(0.0, abs=1e-10)


def test_witness_cdw_cat_anchor(cdw_cat_state, basis8):
    rep = witness(cdw_cat_state, basis8, 0.0)
    assert rep.var_R == pytest.approx(1.625, abs=1e-4)
    assert rep.r_sep == pytest.approx(1.75, abs=1e-4)
    assert rep.lam == pytest.approx(-0.125, abs=1e-4)


def test_witness_rejects_off_grid_momentum(basis8, mott_state):
    with pytest.raises(ValueError):
        witness(mott_state, basis8, 0.1)


def test_witness_lambda_stored_exactly(sf_state, basis8):
    rep = witness(sf_state, basis8, 0.0)
    assert rep.lam == rep.var_R - rep.r_sep


def test_min_over_q_superfluid(sf_state, basis8):
    for q in momentum_grid(8):
        assert witness(sf_state, basis8, q).lam == pytest.approx(-1.75, abs=1e-8)
    q_star, rep = witness_min_over_q(sf_state, basis8)
    assert rep.lam == pytest.approx(-1.75, abs=1e-8)


def test_min_over_q_mott_tie_breaks_to_zero(mott_state, basis8):
    q_star, rep = witness_min_over_q(mott_state, basis8)
    assert q_star == 0.0
    assert rep.lam == pytest.approx(0.0, abs=1e-10)


def test_min_over_q_cdw_cat(cdw_cat_state, basis8):
    for q in momentum_grid(8):
        assert witness(cdw_cat_state, basis8, q).lam == pytest.approx(-0.125, abs=1e-4)


def test_theta_mott(mott_state, basis8):
    theta = theta_lr(mott_state, basis8)
    assert theta["signed"] == pytest.approx(0.0, abs=1e-10)
    assert theta["rms"] == pytest.approx(0.0, abs=1e-6)


def test_theta_pinned(cdw_pinned_state, basis8):
    theta = theta_lr(cdw_pinned_state, basis8)
    assert abs(theta["signed"]) == pytest.approx(2.0, abs=1e-6)
    assert theta["rms"] == pytest.approx(2.0, abs=1e-6)


def test_theta_cat(cdw_cat_state, basis8):
    theta = theta_lr(cdw_cat_state, basis8)
    assert theta["signed"] == pytest.approx(0.0, abs=1e-4)
    assert theta["rms"] == pytest.approx(2.0, abs=1e-6)


def test_theta_rejects_odd_l():
    basis = enumerate_basis(3, 3)
    with pytest.raises(ValueError):
        theta_lr(np.ones(basis.dim) / np.sqrt(basis.dim), basis)


def test_entropy_mott_product_state(mott_state, basis8):
    assert entanglement_entropy(mott_state, basis8, 4).S_V == pytest.approx(0.0, abs=1e-10)


def test_entropy_cdw_cat_two_terms(cdw_cat_state, basis8):
    rep = entanglement_entropy(cdw_cat_state, basis8, 4)
    assert rep.S_V == pytest.approx(np.log(2), abs=1e-4)
    assert rep.schmidt[:2] == pytest.approx([0.5, 0.5], abs=1e-4)


def test_entropy_superfluid_vs_rdm_oracle(sf_state, basis8):
    analytic = analytic_condensate(basis8, q=0.0).real
    expected = rdm_entropy(analytic, basis8, 4)
    assert entanglement_entropy(sf_state, basis8, 4).S_V == pytest.approx(expected, abs=1e-8)
    assert entanglement_entropy(analytic, basis8, 4).S_V == pytest.approx(expected, abs=1e-10)


def test_entropy_schmidt_probabilities_normalized(sf_state, basis8):
    rep = entanglement_entropy(sf_state, basis8, 3)
    assert rep.schmidt.sum() == pytest.approx(1.0, abs=1e-10)
    assert rep.S_V <= np.log(min(enumerate_basis(3, 8).dim, enumerate_basis(5, 8).dim)) + 1e-12


def test_entropy_cut_symmetry(sf_state, cdw_cat_state, basis8):
    for state in (sf_state, cdw_cat_state):
        for cut in range(1, 8):
            a = entanglement_entropy(state, basis8, cut).S_V
            b = entanglement_entropy(state, basis8, 8 - cut).S_V
            assert a == pytest.approx(b, abs=1e-10)


def test_entropy_rejects_bad_cut(basis8, mott_state):
    for cut in (0, 8):
        with pytest.raises(ValueError):
            entanglement_entropy(mott_state, basis8, cut)


def test_gap_mott_doublon_counting():
    params = ModelParams(L=8, N=8, J=0.0, U=1.0)
    rep = energy_gap(params)
    assert rep.E_minus == pytest.approx(0.0, abs=1e-10)
    assert rep.E_0 == pytest.approx(0.0, abs=1e-10)
    assert rep.E_plus == pytest.approx(1.0, abs=1e-9)
    assert rep.delta == pytest.approx(8.0 / 9.0, abs=1e-9)


def test_gap_vanishes_without_interaction():
    params = ModelParams(L=8, N=8, J=1.0, U=0.0)
    rep = energy_gap(params)
    assert rep.delta == pytest.approx(0.0, abs=1e-8)


def test_gap_requires_enough_bosons():
    with pytest.raises(ValueError):
        energy_gap(ModelParams(L=4, N=1, J=0.5))


def test_structure_factor_anchors(sf_state, mott_state, basis8):
    assert structure_factor(sf_state, basis8, 0.0) == pytest.approx(64.0, abs=1e-6)
    for k in momentum_grid(8):
        assert structure_factor(mott_state, basis8, float(k)) == pytest.approx(8.0, abs=1e-10)


def test_structure_factor_consistent_with_mean_r(cdw_cat_state, basis8):
    for q in momentum_grid(8):
        s_k = structure_factor(cdw_cat_state, basis8, float(q))
        assert s_k / 8.0 == pytest.approx(witness(cdw_cat_state, basis8, q).mean_R, abs=1e-10)


def test_variance_matches_brute_force_correlators():
    basis = enumerate_basis(4, 4)
    params = ModelParams(L=4, N=4, J=0.7, U=1.0, U_LR=0.3)
    gs = ground_state(build_hamiltonian(params, basis))
    for q in (0.0, np.pi / 2.0):
        mean_oracle, var_oracle = brute_force_variance(gs.vector, basis, q)
        rep = witness(gs, basis, q)
        assert rep.mean_R == pytest.approx(mean_oracle, abs=1e-10)
        assert rep.var_R == pytest.approx(var_oracle, abs=1e-10)


def test_mean_r_matches_one_body_sum(cdw_cat_state, basis8):
    G = one_body_matrix(cdw_cat_state, basis8)
    idx = np.arange(8)
    for q in (0.0, np.pi):
        phases = np.exp(1j * q * idx)
        expected = (phases @ G @ np.conj(phases)).real / 8.0
        assert witness(cdw_cat_state, basis8, q).mean_R == pytest.approx(expected, abs=1e-10)


def test_product_fock_states_have_zero_lambda(rng, basis8):
    # spot check of the pairing identity through the public witness path;
    # the exhaustive scan lives in the acceptance suite
    for r in rng.choice(basis8.dim, size=25, replace=False):
        psi = np.zeros(basis8.dim)
        psi[r] = 1.0
        for q in (0.0, np.pi):
            assert witness(psi, basis8, q).lam == pytest.approx(0.0, abs=1e-10)


def test_mean_r_bounds(sf_state, mott_state, cdw_cat_state, basis8):
    for state in (sf_state, mott_state, cdw_cat_state):
        for q in momentum_grid(8):
            rep = witness(state, basis8, q)
            assert -1e-8 <= rep.mean_R <= 8.0 + 1e-8
            assert rep.var_R >= -1e-10
