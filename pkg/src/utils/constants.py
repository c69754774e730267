"""Application constants."""

APP_NAME = "geomark"
APP_VERSION = "0.1.0"
APP_DESCRIPTION = (
    "Statistical learning of geometric marks of planar point processes "
    "via wavelet scattering moments."
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3

# Significant digits used for every float written to NDJSON and CSV outputs.
FLOAT_DIGITS = 17
FLOAT_FORMAT = "%.17g"
