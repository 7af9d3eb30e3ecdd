#!/usr/bin/env python3

from collections.abc import Callable
from typing import Any

import numpy as np
import numpy.typing as npt

RealArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]
IntArray = npt.NDArray[np.intp]
# Real symmetric or complex Hermitian entries
MatrixArray = npt.NDArray[np.inexact[Any]]

# Maps an array of times to an array of observable values of the same shape
Observable = Callable[[RealArray], RealArray]
