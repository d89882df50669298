import numpy as np
import pytest

from ebhsim.fock import enumerate_basis
from ebhsim.model import ModelParams, build_hamiltonian
from ebhsim.solver import ground_state


@pytest.fixture(scope="session")
def basis8():
    return enumerate_basis(8, 8)


@pytest.fixture(scope="session")
def sf_state(basis8):
    """Superfluid ground state: J=1, U=U_LR=0, periodic."""
    params = ModelParams(L=8, N=8, J=1.0, U=0.0)
    return ground_state(build_hamiltonian(params, basis8))


@pytest.fixture(scope="session")
def mott_state(basis8):
    """Mott ground state: J=0, U=1, U_LR=0."""
    params = ModelParams(L=8, N=8, J=0.0, U=1.0)
    return ground_state(build_hamiltonian(params, basis8))


@pytest.fixture(scope="session")
def cdw_cat_state(basis8):
    """Symmetric CDW superposition selected by the tiny-hopping knob."""
    params = ModelParams(L=8, N=8, J=0.0, U=1.0, U_LR=2.0, j_epsilon=1e-6)
    return ground_state(build_hamiltonian(params, basis8))


@pytest.fixture(scope="session")
def cdw_pinned_state(basis8):
    """One pinned CDW branch selected by the staggered field."""
    params = ModelParams(L=8, N=8, J=0.0, U=1.0, U_LR=2.0, pin_epsilon=1e-4)
    return ground_state(build_hamiltonian(params, basis8))


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
