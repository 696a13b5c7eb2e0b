"""Periodic-table data used by the parser, valence model and descriptors."""

SYMBOLS = (
    "H He Li Be B C N O F Ne Na Mg Al Si P S Cl Ar K Ca Sc Ti V Cr Mn Fe Co Ni "
    "Cu Zn Ga Ge As Se Br Kr Rb Sr Y Zr Nb Mo Tc Ru Rh Pd Ag Cd In Sn Sb Te I Xe "
    "Cs Ba La Ce Pr Nd Pm Sm Eu Gd Tb Dy Ho Er Tm Yb Lu Hf Ta W Re Os Ir Pt Au Hg "
    "Tl Pb Bi Po At Rn Fr Ra Ac Th Pa U Np Pu Am Cm Bk Cf Es Fm Md No Lr Rf Db Sg "
    "Bh Hs Mt Ds Rg Cn Nh Fl Mc Lv Ts Og"
).split()

assert len(SYMBOLS) == 118

ATOMIC_NUMBER = {sym: z for z, sym in enumerate(SYMBOLS, start=1)}

# Conventional standard atomic weights (IUPAC abridged); mass number of the
# longest-lived isotope for elements without a standard weight.
_WEIGHTS = (
    1.008, 4.0026, 6.94, 9.0122, 10.81, 12.011, 14.007, 15.999, 18.998, 20.180,
    22.990, 24.305, 26.982, 28.085, 30.974, 32.06, 35.45, 39.95, 39.098, 40.078,
    44.956, 47.867, 50.942, 51.996, 54.938, 55.845, 58.933, 58.693, 63.546, 65.38,
    69.723, 72.630, 74.922, 78.971, 79.904, 83.798, 85.468, 87.62, 88.906, 91.224,
    92.906, 95.95, 97.0, 101.07, 102.91, 106.42, 107.87, 112.41, 114.82, 118.71,
    121.76, 127.60, 126.90, 131.29, 132.91, 137.33, 138.91, 140.12, 140.91, 144.24,
    145.0, 150.36, 151.96, 157.25, 158.93, 162.50, 164.93, 167.26, 168.93, 173.05,
    174.97, 178.49, 180.95, 183.84, 186.21, 190.23, 192.22, 195.08, 196.97, 200.59,
    204.38, 207.2, 208.98, 209.0, 210.0, 222.0, 223.0, 226.0, 227.0, 232.04,
    231.04, 238.03, 237.0, 244.0, 243.0, 247.0, 247.0, 251.0, 252.0, 257.0,
    258.0, 259.0, 262.0, 267.0, 268.0, 269.0, 270.0, 269.0, 278.0, 281.0,
    282.0, 285.0, 286.0, 289.0, 290.0, 293.0, 294.0, 294.0,
)

assert len(_WEIGHTS) == 118

ATOMIC_WEIGHT = {z: w for z, w in enumerate(_WEIGHTS, start=1)}

# Bare (unbracketed) atoms allowed in SMILES, with their default valences.
ORGANIC_VALENCES = {
    5: (3,),
    6: (4,),
    7: (3,),
    8: (2,),
    15: (3, 5),
    16: (2, 4, 6),
    9: (1,),
    17: (1,),
    35: (1,),
    53: (1,),
}

ORGANIC_SYMBOLS = ("Cl", "Br", "B", "C", "N", "O", "P", "S", "F", "I")
AROMATIC_ORGANIC = {"b": 5, "c": 6, "n": 7, "o": 8, "p": 15, "s": 16}
AROMATIC_BRACKET = {**AROMATIC_ORGANIC, "se": 34, "as": 33, "te": 52}

# Valences used when kekulizing or reasoning about lone pairs.  Charged atoms
# borrow the valence list of their isoelectronic neutral neighbour
# (N+ behaves like C, O+ like N, C- like N, ...).
_GROUP_VALENCE = {
    1: (1,), 5: (3,), 6: (4,), 7: (3, 5), 8: (2,), 9: (1,), 14: (4,),
    15: (3, 5), 16: (2, 4, 6), 17: (1,), 33: (3, 5), 34: (2, 4, 6), 35: (1,),
    52: (2, 4, 6), 53: (1, 3, 5),
}


def allowed_valences(atomic_number: int, charge: int = 0) -> tuple[int, ...]:
    """Valences an atom may take, shifted for formal charge."""
    if charge == 0:
        return _GROUP_VALENCE.get(atomic_number, ())
    if atomic_number in (5, 6, 7, 8, 15, 16, 33, 34, 52):
        shifted = atomic_number - charge
        base = _GROUP_VALENCE.get(shifted)
        if base is not None:
            return base
        # e.g. C+ behaves like B, B- like C
        return _GROUP_VALENCE.get(atomic_number, ())
    return ()
