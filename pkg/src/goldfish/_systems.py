"""Shared constants for the kernel backends.

System ids and integrator status codes must be plain ints so numba can
freeze them at compile time; the Dormand-Prince 5(4) tableau lives here so
both backends read one copy.
"""

SYS_NEWGOLD = 0
SYS_CALOGERO = 1
SYS_ISOGOLD = 2

STATUS_OK = 0
STATUS_UNDERFLOW = 1
STATUS_COLLISION_Z = 2
STATUS_COLLISION_C = 3
STATUS_MAXSTEPS = 4

COLLISION_TOL = 1e-10

# Dormand-Prince 5(4): nodes, stage coefficients, 5th-order weights, and the
# difference between the 5th- and embedded 4th-order weights (error weights).
C2 = 1.0 / 5.0
C3 = 3.0 / 10.0
C4 = 4.0 / 5.0
C5 = 8.0 / 9.0

A21 = 1.0 / 5.0
A31 = 3.0 / 40.0
A32 = 9.0 / 40.0
A41 = 44.0 / 45.0
A42 = -56.0 / 15.0
A43 = 32.0 / 9.0
A51 = 19372.0 / 6561.0
A52 = -25360.0 / 2187.0
A53 = 64448.0 / 6561.0
A54 = -212.0 / 729.0
A61 = 9017.0 / 3168.0
A62 = -355.0 / 33.0
A63 = 46732.0 / 5247.0
A64 = 49.0 / 176.0
A65 = -5103.0 / 18656.0

B1 = 35.0 / 384.0
B3 = 500.0 / 1113.0
B4 = 125.0 / 192.0
B5 = -2187.0 / 6784.0
B6 = 11.0 / 84.0

# b_i - bhat_i (bhat from the embedded 4th-order method)
E1 = B1 - 5179.0 / 57600.0
E3 = B3 - 7571.0 / 16695.0
E4 = B4 - 393.0 / 640.0
E5 = B5 + 92097.0 / 339200.0
E6 = B6 - 187.0 / 2100.0
E7 = -1.0 / 40.0

MAX_STEPS = 5_000_000
