"""Physical constants and reference rates (SI units)."""

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact

ASTRONOMICAL_UNIT = 1.495_978_707e11  # m

# Reference rates for the Doppler-versus-ranging comparison, in 1/s.
HUBBLE_RATE = 2.19e-18  # local Hubble constant expressed as an inverse time
PIONEER_ANOMALY_RATE = -2.80e-18  # mean observed-minus-modeled Doppler drift rate
