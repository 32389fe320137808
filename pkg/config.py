import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    LOG_LEVEL = os.environ.get('TRUNCDP_LOG_LEVEL', 'WARNING')

    # Uniform sigma search
    SIGMA_PRECISION = int(os.environ.get('TRUNCDP_SIGMA_PRECISION', 6))
    SPAN_PROBES = int(os.environ.get('TRUNCDP_SPAN_PROBES', 256))
    PROBE_CUTOFF_FACTOR = float(os.environ.get('TRUNCDP_PROBE_CUTOFF_FACTOR', 50))

    # Guarantee verification grid
    VERIFY_LOCATIONS = int(os.environ.get('TRUNCDP_VERIFY_LOCATIONS', 50))
    VERIFY_OUTPUTS = int(os.environ.get('TRUNCDP_VERIFY_OUTPUTS', 200))
    VERIFY_MAX_I = float(os.environ.get('TRUNCDP_VERIFY_MAX_I', 10.0))
    VERIFY_OUTPUT_PADDING = float(os.environ.get('TRUNCDP_VERIFY_OUTPUT_PADDING', 1.0))

    # Sampling
    SAMPLE_SEED = int(os.environ.get('TRUNCDP_SAMPLE_SEED', 0))

    # 17 significant digits round-trip any double
    FLOAT_FORMAT = '.17g'
