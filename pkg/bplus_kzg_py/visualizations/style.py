"""Shared plotting style for benchmark figures.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import os

from cycler import cycler
import matplotlib as mpl
import matplotlib.pyplot as plt

import bplus_kzg_py.utils.file_operations as fo

CURVE_COLORS = ["#8C1515", "#4298B5", "#006F54", "#E98300", "#620059"]
"""Line colors, measured B+ sizes first, then the size models."""

CURVE_MARKERS = ["o", "s", "^", "v", "D"]
"""Markers paired with ``CURVE_COLORS``."""

mpl.rcParams["axes.prop_cycle"] = (cycler(color=CURVE_COLORS)
                                   + cycler(marker=CURVE_MARKERS))

def close_figures(figs=None):
    """Close benchmark figures, or every open figure when figs is None.

    Parameters
    ----------
    figs : list or matplotlib.pyplot.figure or None
        Figures to close.

    """

    if figs is None:
        plt.close("all")
        return
    if isinstance(figs, plt.Figure):
        figs = [figs]
    if isinstance(figs, list):
        for fig in [fig for fig in figs if isinstance(fig, plt.Figure)]:
            plt.close(fig)
    else:
        raise TypeError("Must be either a single figure or list of figures.")

def get_label(inputs):
    """Return label/title name from input dictionary.

    Parameters
    ----------
    inputs : dict
        Dictionary of {column_name : column_value} pairs to create name
        from.

    Returns
    -------
    label : string
        Properly formatted label/title for use in graphs.

    """

    if not isinstance(inputs,dict):
        raise TypeError("get_label input must be dictionary.")

    # units are bracketed
    units = {"bytes", "kib", "s", "ms"}
    unit_replacements = {
                         "kib" : "KiB",
                         "ms" : "milliseconds",
                        }
    # design names keep their usual capitalization
    name_replacements = {
                         "BPLUS" : "B+",
                         "QARY" : "q-ary",
                        }

    label = ""
    for value in inputs.values():

        if not isinstance(value,str): # convert numbers to string
            value = str(value)

        value = value.strip().split("_")
        if value[-1] in units and len(value) > 1:
            if value[-1] in unit_replacements:
                value[-1] = unit_replacements[value[-1]]
            value = " ".join(value[:-1]).upper() + " [" + value[-1] + "]"
        else:
            value = " ".join(value).upper()
        for old_value, new_value in name_replacements.items():
            value = value.replace(old_value, new_value)

        label += (" " if len(label) != 0 else "") + value

    return label

def save_figure(fig, title, prefix="", fname=None): # pragma: no cover
    """Save a figure as a png.

    Parameters
    ----------
    fig : matplotlib.pyplot.figure
        Figure to save.
    title : string
        Figure title, turned into the file name when fname is None.
    prefix : string
        File name prefix.
    fname : string or path-like
        Explicit destination passed to ``savefig``; overrides title and
        prefix.

    """

    if fname is None:
        log_path = os.path.join(os.getcwd(), "results", fo.TIMESTAMP)
        fo.make_dir(log_path)
        stem = title.replace(" ", "_").replace(".", "").replace("+", "plus")
        if prefix != "" and not prefix.endswith("_"):
            prefix += "_"
        fname = os.path.join(log_path, prefix + stem + ".png")

    fig.savefig(fname, dpi=300., format="png", bbox_inches="tight")
