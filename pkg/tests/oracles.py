"""Reference values computed independently with mpmath at 50 digits.

Masses and level-set masses come from adaptive quadrature of the closed-form
profile.  Derivatives come from numerical differentiation.  Off-center ball
masses use the spherical-cap area of ``|x| = r`` inside ``B_R(y)``, which
avoids any multi-dimensional rule.
"""

OMEGA = {
    2: 3.1415926535897932385,
    3: 4.1887902047863909846,
    4: 4.9348022005446793094,
    5: 5.2637890139143245967,
    6: 5.1677127800499700292,
    7: 4.7247659703314011696,
    8: 4.0587121264167682182,
}
C_N = {2: 8.0, 3: 60.75, 4: 606.81481481481481481, 5: 7629.39453125, 6: 116095.05792,
       7: 2076667.7470636145405, 8: 42723175.461186604707}
MASS_QUANTUM = {
    2: 25.132741228718345908,
    3: 254.46900494077325232,
    4: 2994.511083471260215,
    5: 40159.523116411778234,
    6: 599945.91451382549104,
    7: 9811769.1030109435262,
    8: 173401070.32334937658,
}

# (n, lam, r) -> U and dU/dr
PROFILE = {(3, 2.0, 0.7): 3.2551775814270308257, (4, 0.5, 3.0): -0.36258344348875553392}
PROFILE_DERIVATIVE = {(3, 2.0, 0.7): -4.0086332513880109652}

# (n, lam, R) -> lhs, F term, cross term, energy term for F = expm1, centered
POHOZAEV = {
    (2, 1.0, 1.0): (18.849555921538759431, 6.2831853071795864769, 25.132741228718345908,
                    -12.566370614359172954),
    (3, 1.0, 1.0): (178.28538309122076628, 82.859506238430796664, 143.13881527918495443,
                    -47.712938426394984809),
    (4, 2.0, 0.1): (13.750860340102560204, 12.310754847160378112, 1.9201406572562427888,
                    -0.48003516431406069719),
    (3, 0.5, 10.0): (-11923.168675695156595, -12513.564047005157326, 885.59305696500109608,
                     -295.19768565500036536),
}

# (n, lam) -> (t = t0 - 1, R(t), M(t))
LEVEL = {
    (3, 1.0): (3.1067670822206578381, 0.53890632655884531785, 20.447729119314860806),
    (4, 2.0): (8.1808123840746864953, 0.19453059205839152736, 32.409824580773087762),
}

# n = 2, q = 1, R -> infinity, keyed by lam
WEIGHTED_Q1 = {1.0: 19.739208802178717238, 2.0: 23.30547075666248625, 0.3: 9.645992822818036405}

# n = 3, family centred at 0: (lam, y, R) -> int_{B_R(y)} e^U
OFF_CENTER_MASS = {
    (1.0, (0.4, 0.0, 0.0), 2.0): 136.44404397926334845,
    (0.5, (1.0, 0.5, 0.0), 3.0): 98.883522610524090129,
}
