"""Exception types shared across the package."""


class CirculatticeError(Exception):
    pass


class BudgetExceeded(CirculatticeError):
    """An enumeration would visit more items than the configured budget."""

    def __init__(self, needed, budget, partial=None):
        super().__init__(f"enumeration needs {needed} visits, budget is {budget}")
        self.needed = needed
        self.budget = budget
        self.partial = partial


class RegimeViolation(CirculatticeError):
    """Squared radius outside the d < p/2 regime where ball counts are lattice counts."""


class NotTwoCodeRegime(CirculatticeError):
    """p mod q is not a primitive root, so Z^q - 1 has more than two irreducible factors."""


class NoPrimeInWindow(CirculatticeError):
    """No auxiliary prime in [4 ln n, 4 ln^2 n]."""
