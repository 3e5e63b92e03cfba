"""Plot of proof size against tree size.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt

from bplus_kzg_py.visualizations.style import *

SIZE_COLUMNS = ["bplus_membership_bytes", "iavl_model_bytes",
                "bplus_model_bytes", "rsa_model_bytes", "qary_model_bytes"]
"""list : Sweep columns drawn as curves."""

def plot_proof_sizes(frame, fig=None, title=None, save=False, prefix="",
                     fname=None, markeredgecolor="k", markeredgewidth=0.2):
    """Plot measured and modelled proof sizes of a bench sweep.

    Extrapolated rows of the measured curve are drawn with hollow
    markers.

    Parameters
    ----------
    frame : pd.DataFrame
        Output of ``run_proof_size_sweep``.
    fig : matplotlib.pyplot.Figure
         Previous figure on which to add current plotting. Default of
         None plots on a new figure.
    title : string
        Title for the plot.
    save : bool
        Saves figure if true to file specified by fname or defaults
        to the Results folder otherwise.
    prefix : string
        File prefix to add to filename.
    fname : string or path-like
        Path to save figure. If not None, fname is passed directly
        to matplotlib's savefig fname parameter and prefix will be
        overwritten.
    markeredgecolor : color
        Marker edge color.
    markeredgewidth : float
        Marker edge width.

    Returns
    -------
    fig : matplotlib.pyplot.Figure
         Figure of proof sizes.

    """

    if not isinstance(frame, pd.DataFrame):
        raise TypeError("frame must be a pandas DataFrame from "
                        + "run_proof_size_sweep.")
    missing = [column for column in ["n", "extrapolated"] + SIZE_COLUMNS
               if column not in frame.columns]
    if len(missing) > 0:
        raise KeyError("frame is missing columns " + str(missing))
    if not isinstance(prefix, str):
        raise TypeError("Prefix must be a string.")

    if fig is None:
        fig = plt.figure()
    axes = fig.gca()

    n_values = np.asarray(frame["n"], dtype=float)
    extrapolated = np.asarray(frame["extrapolated"], dtype=bool)
    for column in SIZE_COLUMNS:
        lines = axes.plot(n_values, np.asarray(frame[column], dtype=float),
                          label=get_label({column : column}),
                          markeredgecolor=markeredgecolor,
                          markeredgewidth=markeredgewidth)
        if column == "bplus_membership_bytes" and extrapolated.any():
            axes.plot(n_values[extrapolated],
                      np.asarray(frame[column], dtype=float)[extrapolated],
                      linestyle="none", marker=lines[0].get_marker(),
                      markerfacecolor="none",
                      markeredgecolor=lines[0].get_color(),
                      label=get_label({column : column}) + " (EXTRAPOLATED)")

    axes.set_xscale("log")
    if title is None:
        title = "Proof Size vs. Tree Size"
    axes.legend(loc="upper left", bbox_to_anchor=(1.05, 1))
    axes.set_title(title)
    axes.set_xlabel(get_label({"n" : "number_of_keys"}))
    axes.set_ylabel(get_label({"size" : "proof_size_bytes"}))
    fig.set_layout_engine(layout="tight")

    if save: # pragma: no cover
        save_figure(fig, title, prefix, fname)
    return fig
