"""Size caps and budgets.

All limits are configuration with these defaults, chosen to keep worst-case
runtimes in minutes on a desktop.  Every cap surfaces as a CLI flag.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    # Largest order for explicit table construction (S7 is exempt: its own
    # constructor bound of degree <= 7 governs there).
    max_group_order: int = 4096
    # Largest order for subgroup-lattice computations.
    max_lattice_order: int = 256
    # Largest configuration space q^|G| for full orbit enumeration.
    max_states: int = 1 << 24
    # Element-count knob for wreath products (also bounded by max_group_order).
    max_wreath_table: int = 100_000
    # Largest monoid/group order fed to the exact rank search.
    oracle_order_cap: int = 5000
    # Wall-clock budget per exact rank query, seconds.
    oracle_timeout: float = 60.0
    # State-space caps for the brute-force CA/ICA enumerations.
    ica_enum_states: int = 64
    ca_enum_states: int = 16
    # Materialize the full list of invertible CA only below this group order.
    ica_materialize_cap: int = 2048
    # Orders are kept as exact integers up to this many decimal digits.
    exact_digits_cap: int = 1_000_000
    # Worker threads for orbit enumeration chunking (1 = serial).
    threads: int = 1

    def with_overrides(self, **kwargs) -> "Caps":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT_CAPS = Caps()
