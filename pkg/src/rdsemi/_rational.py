from fractions import Fraction


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are rejected so that exact paths stay exact.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r} in exact arithmetic")
    return Fraction(value)


def fmt(value: Fraction) -> str:
    """Render a rational as "p/q" (or "p" when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
