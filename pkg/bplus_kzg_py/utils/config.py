"""Operator configuration shared by the store and the command line.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import os
from typing import Optional
from dataclasses import dataclass

from bplus_kzg_py.utils.constants import (DEFAULT_BRANCHING_FACTOR,
                                          MIN_BRANCHING_FACTOR)

DEFAULT_STORE_PATH = os.path.join(os.getcwd(), 'data', 'store')
DEFAULT_PARAMS_PATH = os.path.join(os.getcwd(), 'data', 'params.bin')

@dataclass
class Config:
    """Locations and tree shape used by a store.

    Attributes
    ----------
    store_path : string or path-like
        Directory holding the page file, value log and root records.
    branching_factor : int
        Maximum number of children q of any node.
    params_path : string or path-like
        Location of the public parameter file.
    seed : int or None
        Seed of a test-mode setup, None for externally generated
        parameters.

    """

    store_path: str = DEFAULT_STORE_PATH
    branching_factor: int = DEFAULT_BRANCHING_FACTOR
    params_path: str = DEFAULT_PARAMS_PATH
    seed: Optional[int] = None

    def validate(self, params=None):
        """Check the branching factor against its bounds.

        Parameters
        ----------
        params : bplus_kzg_py.polycommit.kzg.PublicParams or None
            If given, the branching factor must also fit under its
            degree bound.

        """

        if not isinstance(self.branching_factor, int):
            raise TypeError("branching factor must be an integer.")
        if self.branching_factor < MIN_BRANCHING_FACTOR:
            raise ValueError("branching factor q must be at least "
                             + str(MIN_BRANCHING_FACTOR) + ".")
        if params is not None \
            and self.branching_factor - 1 > params.degree_bound:
            raise ValueError("branching factor q=" + str(self.branching_factor)
                             + " exceeds params degree bound t="
                             + str(params.degree_bound) + ".")
