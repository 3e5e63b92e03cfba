"""Handle version and add submodules to bplus_kzg_py namespace."""

from importlib import metadata

# import submodules into bplus_kzg_py namespace
from bplus_kzg_py.algebra.curve import *

from bplus_kzg_py.bench.proof_size import *

from bplus_kzg_py.polycommit.polynomial import *
from bplus_kzg_py.polycommit.kzg import *

from bplus_kzg_py.proofs.proofs import *
from bplus_kzg_py.proofs.wire import *

from bplus_kzg_py.store.store import *

from bplus_kzg_py.tree.btree import *
from bplus_kzg_py.tree.authtree import *

from bplus_kzg_py.utils.config import *
from bplus_kzg_py.utils.constants import *
from bplus_kzg_py.utils.file_operations import *

from bplus_kzg_py.visualizations.plot_proof_size import *
from bplus_kzg_py.visualizations.style import *

# single location of version exists in pyproject.toml
__version__ = metadata.version("bplus-kzg-py")
