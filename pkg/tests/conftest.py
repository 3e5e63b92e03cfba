"""Common fixtures for all tests.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import pytest

from bplus_kzg_py.algebra.curve import hash_digest
from bplus_kzg_py.polycommit.kzg import PublicParams, setup
from bplus_kzg_py.tree.authtree import AuthTree

TEST_DEGREE_BOUND = 16
"""int : Degree bound of the shared test parameters."""

def value_digest(key):
    """Digest stored under ``key`` by the populated tree fixtures."""
    return hash_digest(b"value" + key)

@pytest.fixture(name="params", scope="session")
def fixture_params():
    """Test-mode public parameters with degree bound 16.

    Returns
    -------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Parameters that keep their trapdoor.

    """
    return setup(TEST_DEGREE_BOUND, mode="test", seed=1)

@pytest.fixture(name="public_params", scope="session")
def fixture_public_params(params):
    """The shared parameters with the trapdoor removed.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Test-mode parameters.

    Returns
    -------
    public_params : bplus_kzg_py.polycommit.kzg.PublicParams
        Same powers, no trapdoor.

    """
    return PublicParams(params.degree_bound, params.powers,
                        params.g2_powers)

@pytest.fixture(name="keys")
def fixture_keys():
    """Thirty sorted keys with gaps between them.

    Returns
    -------
    keys : list of bytes
        ``b"key000"``, ``b"key002"``, ... ``b"key058"``.

    """
    return [b"key%03d" % i for i in range(0, 60, 2)]

@pytest.fixture(name="auth_tree")
def fixture_auth_tree(params, keys):
    """Authenticated tree with q=4 holding every key of ``keys``.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Test-mode parameters.
    keys : list of bytes
        Keys to insert.

    Returns
    -------
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Populated tree of height three or more.

    """
    auth_tree = AuthTree(params, q=4)
    auth_tree.apply_updates([("insert", key, value_digest(key))
                             for key in keys])
    return auth_tree
