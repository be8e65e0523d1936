"""pyFibCodes - Fibonacci cyclic codes and Massey secret sharing"""

# This file is needed for src layout. Reference to the actual package
from pyFibCodes import *
