"""Small presentations used as a reference corpus."""

FINITE = {
    "Z2": "< x | x^2 >",
    "Z3": "< x | x^3 >",
    "Z4": "< x | x^4 >",
    "Z2xZ2": "< x, y | x^2, y^2, (x y)^2 >",
    "S3": "< x, y | x^3, y^2, (x y)^2 >",
    "D4": "< r, s | r^4, s^2, (r s)^2 >",
    "Q8": "< i, j | i^4, i^2 j^-2, j^-1 i j i >",
    "A4": "< x, y | x^2, y^3, (x y)^3 >",
}

# free abelian groups, for the free-abelian backend
FREE_ABELIAN = {
    1: "< x | >",
    2: "< x, y | x y x^-1 y^-1 >",
    3: "< x, y, z | x y x^-1 y^-1, x z x^-1 z^-1, y z y^-1 z^-1 >",
}
