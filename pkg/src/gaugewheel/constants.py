"""Physical constants (SI) and the caesium D2 reference values.

The CODATA constants and the Cs-133 numbers are standard literature values;
they are collected here as the single source of truth for the presets.
"""

import math

HBAR = 1.054571817e-34        # reduced Planck constant (J s)
E_CHARGE = 1.602176634e-19    # elementary charge (C)

# Cs-133, 6^2S_1/2 - 6^2P_3/2 (D2 line)
CS_MASS = 2.20695e-25                 # atomic mass (kg)
CS_D2_WAVELENGTH = 852.35e-9          # transition wavelength (m)
CS_D2_GAMMA = 2.0 * math.pi * 5.22e6  # natural linewidth (rad/s)
CS_D2_ISAT = 11.0                     # saturation intensity (W/m^2)
CS_D2_LABEL = "Cs-133 6S1/2-6P3/2"
