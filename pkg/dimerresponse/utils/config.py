# Threads
DEFAULT_THREADS = 4
MAX_THREADS = 64
THREADS_ENV = "DIMER_THREADS"

# Validity thresholds
WEAK_PROBE_RATIO = 0.1
CUTOFF_K0R = 2.0
QUASI_RESONANCE_RATIO = 1e-3
DEFAULT_OMEGA0 = 1e7

# Oracle defaults
ORACLE_TOLERANCE = 0.02
ORACLE_T_OBS = 50.0  # in units of 1/gamma
ORACLE_MIN_T_OBS = 10.0  # in units of 1/gamma
NODE_DOUBLING_GATE = 1e-3
SPECTRAL_BANDWIDTH = 1e4
PERIOD_SAMPLES = 3
GAUSS_ORDER = 8

# Integrator
MAX_STEP_FRACTION = 0.01  # dt <= MAX_STEP_FRACTION / Gamma

# Figure presets shared by fig3, fig4 and fig5
FIGURE_K0R = 2.0
FIGURE_GAMMA_NR = 0.2
FIGURE_PUMPS = (0.0, 1.2, 7.5)
