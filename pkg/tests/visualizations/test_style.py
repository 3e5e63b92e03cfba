"""Tests for the shared plotting style.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import pytest
import matplotlib.pyplot as plt

from bplus_kzg_py.visualizations import style

def testget_label():
    """Test for getting nice labels.

    """

    assert style.get_label({"column" : "bplus_membership_bytes"}) \
        == "B+ MEMBERSHIP [bytes]"
    assert style.get_label({"column" : "qary_model_bytes"}) \
        == "q-ary MODEL [bytes]"
    assert style.get_label({"column" : "iavl_model_bytes"}) \
        == "IAVL MODEL [bytes]"
    assert style.get_label({"column" : "prove_s"}) == "PROVE [s]"
    assert style.get_label({"column" : "latency_ms"}) \
        == "LATENCY [milliseconds]"
    assert style.get_label({"column" : "file_size_kib"}) == "FILE SIZE [KiB]"

    # a lone unit is not bracketed
    assert style.get_label({"column" : "bytes"}) == "BYTES"
    assert style.get_label({"n" : "number_of_keys"}) == "NUMBER OF KEYS"
    assert style.get_label({"q" : 256}) == "256"
    assert style.get_label({"design" : "rsa", "n" : 1000}) == "RSA 1000"

    with pytest.raises(TypeError) as excinfo:
        style.get_label(["should","fail"])
    assert "dictionary" in str(excinfo.value)

def test_close_figures():
    """Single figures and lists of figures are closed.

    """

    fig = plt.figure()
    style.close_figures(fig)
    assert not plt.fignum_exists(fig.number)

    figs = [plt.figure(), plt.figure()]
    style.close_figures(figs)
    assert all(not plt.fignum_exists(fig.number) for fig in figs)

    plt.figure()
    style.close_figures()
    assert len(plt.get_fignums()) == 0

def test_close_figures_fail():
    """Test expected fail conditions.

    """

    style.close_figures([])

    with pytest.raises(TypeError) as excinfo:
        style.close_figures(0.)
    assert "figure" in str(excinfo.value)
