"""Simple file operation utilities.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import os
import time

def make_dir(directory): # pragma: no cover
    """Create a file directory if it doesn't yet exist.

    Parameters
    ----------
    directory : string
        Filepath of directory to create if it does not exist.

    """

    # create directory if it doesn't yet exist
    if not os.path.isdir(directory):
        try:
            os.makedirs(directory)
        except OSError as error:
            raise OSError("Unable to create directory " + directory) from error

def append_durable(file_obj, data):
    """Append bytes to an open file and flush them to disk.

    Parameters
    ----------
    file_obj : file object
        File opened in binary append or read/write mode.
    data : bytes
        Bytes to write at the end of the file.

    Returns
    -------
    offset : int
        File offset at which ``data`` begins.

    """

    file_obj.seek(0, os.SEEK_END)
    offset = file_obj.tell()
    file_obj.write(data)
    file_obj.flush()
    os.fsync(file_obj.fileno())
    return offset

def read_exact(file_obj, offset, length):
    """Read exactly ``length`` bytes starting at ``offset``.

    Parameters
    ----------
    file_obj : file object
        File opened in binary read mode.
    offset : int
        Absolute file offset.
    length : int
        Number of bytes to read.

    Returns
    -------
    data : bytes
        The requested bytes.

    """

    file_obj.seek(offset)
    data = file_obj.read(length)
    if len(data) != length:
        raise OSError("short read at offset " + str(offset))
    return data

def _get_timestamp():
    """Returns timestamp of the current time.

    Returns
    -------
    timestamp : string
        Timestamp in order of year, month, day, hour, minute, second
        without spaces or puncuation

    """
    timestamp =  time.strftime("%Y%m%d%H%M%S")
    return timestamp

TIMESTAMP = _get_timestamp()
