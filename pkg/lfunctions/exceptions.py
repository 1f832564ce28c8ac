from django.utils.translation import gettext_lazy as _


class LFunctionsError(Exception):
    """Base exception for all lfunctions related errors"""
    pass


class EnumerationTooLarge(LFunctionsError):
    """Exception raised when an enumeration exceeds its configured budget"""
    def __init__(self, what=None, size=None, limit=None):
        message = _("Enumeration too large")
        if what is not None and size is not None:
            message = _("Enumeration of {what} too large: {size} exceeds the limit of {limit}").format(
                what=what,
                size=size,
                limit=limit
            )
        super().__init__(message)


class CertificateReplayFailed(LFunctionsError):
    """Exception raised when a stored certificate does not reproduce its claim"""
    def __init__(self, reason=None):
        message = _("Certificate replay failed")
        if reason:
            message = _("Certificate replay failed: {reason}").format(reason=reason)
        super().__init__(message)


# ==========================================
# FINITE FIELDS
# ==========================================

class FieldError(LFunctionsError):
    """Base exception for finite field errors"""
    pass


class NonPrimeCharacteristic(FieldError):
    """Exception raised when a field characteristic is not prime"""
    def __init__(self, p=None):
        message = _("Characteristic must be prime")
        if p is not None:
            message = _("Characteristic must be prime, got {p}").format(p=p)
        super().__init__(message)


class ZeroToNegativePower(FieldError):
    """Exception raised when zero is raised to a negative power"""
    def __init__(self, k=None):
        message = _("Zero cannot be raised to a negative power")
        if k is not None:
            message = _("Zero cannot be raised to the negative power {k}").format(k=k)
        super().__init__(message)


class NotInTower(FieldError):
    """Exception raised when two fields do not belong to the same tower"""
    def __init__(self, field=None, base=None):
        message = _("Fields are not in the same tower")
        if field is not None and base is not None:
            message = _("{field} is not an extension of {base} in a declared tower").format(
                field=field,
                base=base
            )
        super().__init__(message)


class NotInSubgroup(FieldError):
    """Exception raised when an element is not an r-th root of unity"""
    def __init__(self, z=None, r=None):
        message = _("Element is not in the roots of unity subgroup")
        if z is not None:
            message = _("{z} is not a {r}-th root of unity").format(z=z, r=r)
        super().__init__(message)


class BadOrder(FieldError):
    """Exception raised when a root of unity does not have the expected order"""
    def __init__(self, zeta=None, r=None):
        message = _("Root of unity has the wrong order")
        if zeta is not None:
            message = _("{zeta} does not have exact multiplicative order {r}").format(zeta=zeta, r=r)
        super().__init__(message)


# ==========================================
# RINGS
# ==========================================

class RingError(LFunctionsError):
    """Base exception for coefficient ring errors"""
    pass


class TableInvalid(RingError):
    """Exception raised when a multiplication table does not define a group"""
    def __init__(self, reason=None):
        message = _("Invalid group table")
        if reason:
            message = _("Invalid group table: {reason}").format(reason=reason)
        super().__init__(message)


class SizeOverflow(RingError):
    """Exception raised when a ring is too large to represent"""
    def __init__(self, size=None, limit=None):
        message = _("Ring too large")
        if size is not None:
            message = _("Ring of size {size} exceeds the limit of {limit}").format(size=size, limit=limit)
        super().__init__(message)


class NotAUnit(RingError):
    """Exception raised when an inverse is requested for a non-unit"""
    def __init__(self, element=None):
        message = _("Element is not a unit")
        if element is not None:
            message = _("{element} is not a unit").format(element=element)
        super().__init__(message)


class BadCharacterOrder(RingError):
    """Exception raised when a character value has the wrong order"""
    def __init__(self, zeta=None, r=None):
        message = _("Character value has the wrong order")
        if zeta is not None:
            message = _("{zeta} does not have the multiplicative order required by a group of order {r}").format(
                zeta=zeta,
                r=r
            )
        super().__init__(message)


class NonCyclicGroup(RingError):
    """Exception raised when a character is requested on a non-cyclic group"""
    def __init__(self, order=None):
        message = _("Group is not cyclic")
        if order is not None:
            message = _("Group of order {order} is not cyclic").format(order=order)
        super().__init__(message)


class RingMismatch(RingError):
    """Exception raised when operands live in different rings"""
    def __init__(self, left=None, right=None):
        message = _("Ring mismatch")
        if left is not None and right is not None:
            message = _("Ring mismatch: {left} vs {right}").format(left=left, right=right)
        super().__init__(message)


class NoncommutativeRing(RingError):
    """Exception raised when an operation requires a commutative ring"""
    def __init__(self, ring=None):
        message = _("Operation requires a commutative ring")
        if ring is not None:
            message = _("Operation requires a commutative ring, got {ring}").format(ring=ring)
        super().__init__(message)


# ==========================================
# POWER SERIES
# ==========================================

class SeriesError(LFunctionsError):
    """Base exception for truncated power series errors"""
    pass


class TruncationMismatch(SeriesError):
    """Exception raised when series have different truncation orders"""
    def __init__(self, left=None, right=None):
        message = _("Truncation mismatch")
        if left is not None and right is not None:
            message = _("Truncation mismatch: T^{left} vs T^{right}").format(left=left, right=right)
        super().__init__(message)


class NonUnitConstantTerm(SeriesError):
    """Exception raised when a series with non-unit constant term is inverted"""
    def __init__(self, constant=None):
        message = _("Constant term is not a unit")
        if constant is not None:
            message = _("Constant term {constant} is not a unit").format(constant=constant)
        super().__init__(message)


# ==========================================
# K1
# ==========================================

class K1Error(LFunctionsError):
    """Base exception for K1 computations"""
    pass


class NotInvertible(K1Error):
    """Exception raised when a matrix is not invertible"""
    def __init__(self, size=None):
        message = _("Matrix is not invertible")
        if size is not None:
            message = _("{size}x{size} matrix is not invertible").format(size=size)
        super().__init__(message)


class PivotSearchExhausted(K1Error):
    """Exception raised when no unit pivot could be produced"""
    def __init__(self, column=None):
        message = _("Pivot search exhausted")
        if column is not None:
            message = _("Pivot search exhausted in column {column}").format(column=column)
        super().__init__(message)


# ==========================================
# SCHEMES
# ==========================================

class SchemeError(LFunctionsError):
    """Base exception for scheme errors"""
    pass


class MultiChartSplitUnsupported(SchemeError):
    """Exception raised when an open/closed split is requested on several charts"""
    def __init__(self, charts=None):
        message = _("Open/closed split requires a single chart")
        if charts is not None:
            message = _("Open/closed split requires a single chart, scheme has {charts}").format(charts=charts)
        super().__init__(message)


class NotZeroDimensional(SchemeError):
    """Exception raised when a scheme is not a finite set of closed points"""
    def __init__(self, scheme=None):
        message = _("Scheme is not zero-dimensional")
        if scheme is not None:
            message = _("Scheme {scheme} is not zero-dimensional").format(scheme=scheme)
        super().__init__(message)


class UnsupportedScheme(SchemeError):
    """Exception raised when no tabulated cohomology exists for a scheme"""
    def __init__(self, scheme=None):
        message = _("Unsupported scheme")
        if scheme is not None:
            message = _("No tabulated cohomology for scheme {scheme}").format(scheme=scheme)
        super().__init__(message)


# ==========================================
# SHEAVES
# ==========================================

class SheafError(LFunctionsError):
    """Base exception for sheaf errors"""
    pass


class BadKummerOrder(SheafError):
    """Exception raised when r does not divide q - 1"""
    def __init__(self, r=None, q=None):
        message = _("Kummer order must divide q - 1")
        if r is not None:
            message = _("Kummer order {r} does not divide q - 1 = {q_minus_one}").format(
                r=r,
                q_minus_one=q - 1
            )
        super().__init__(message)


class VanishingFunction(SheafError):
    """Exception raised when a Kummer function vanishes on the base"""
    def __init__(self, degree=None, count=None):
        message = _("Kummer function vanishes on the base scheme")
        if degree is not None:
            message = _("Kummer function vanishes at {count} point(s) over the degree {degree} extension").format(
                count=count,
                degree=degree
            )
        super().__init__(message)


class PointNotOnBase(SheafError):
    """Exception raised when a closed point does not lie on the covering's base"""
    def __init__(self, point=None):
        message = _("Point is not on the base scheme")
        if point is not None:
            message = _("Point {point} is not on the base scheme").format(point=point)
        super().__init__(message)


class CocycleNotMultiplicative(SheafError):
    """Exception raised when an extension cocycle breaks multiplicativity"""
    def __init__(self, g=None, h=None):
        message = _("Cocycle is not multiplicative")
        if g is not None:
            message = _("Cocycle is not multiplicative on the pair ({g}, {h})").format(g=g, h=h)
        super().__init__(message)


# ==========================================
# L-FUNCTIONS
# ==========================================

class LFunctionError(LFunctionsError):
    """Base exception for L-function computations and verification"""
    pass


class NoSolutionWithinBounds(LFunctionError):
    """Exception raised when no rational function fits the point counts"""
    def __init__(self, num_deg=None, den_deg=None):
        message = _("No rational function within the degree bounds")
        if num_deg is not None:
            message = _("No rational function with numerator degree <= {num_deg} and denominator degree <= {den_deg}").format(
                num_deg=num_deg,
                den_deg=den_deg
            )
        super().__init__(message)


class AmbiguousSolution(LFunctionError):
    """Exception raised when the degree bounds admit several solutions"""
    def __init__(self, free=None):
        message = _("Degree bounds are too loose")
        if free is not None:
            message = _("Degree bounds are too loose: {free} free parameter(s)").format(free=free)
        super().__init__(message)


class PNotInvertible(LFunctionError):
    """Exception raised when the characteristic is not invertible in the coefficients"""
    def __init__(self, p=None, ring=None):
        message = _("p must be invertible in the coefficient ring")
        if p is not None:
            message = _("p = {p} is not invertible in {ring}").format(p=p, ring=ring)
        super().__init__(message)


class NoApplicableMethod(LFunctionError):
    """Exception raised when no verification method applies"""
    def __init__(self, methods=None):
        message = _("No applicable verification method")
        if methods:
            message = _("None of the requested methods apply: {methods}").format(methods=', '.join(methods))
        super().__init__(message)
