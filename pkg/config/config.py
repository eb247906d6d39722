# config.py

# --- Physical Parameters ---
# Rates are in units of the decay rate gamma; times in units of 1/gamma.
OMEGA = 1.0             # Rabi drive amplitude
GAMMA = 1.0             # Spontaneous emission rate per qubit
COUPLING = 0.0          # Ising coupling J
BETA = 1.0              # Bias scale of the classical telegraph model

# --- Numerical Parameters ---
DT = 0.01               # Time step, 0.01/gamma at the default gamma
STEPS = 100_000         # Steps per trajectory
N_TRAJ = 200            # Ensemble size
SEED = 1                # Master seed; trajectory streams are split from it
SAMPLE_STRIDE = 20      # State sampled every SAMPLE_STRIDE steps
MAX_GAMMA_DT = 0.05     # First-order jump probabilities need gamma*dt << 1
MAX_FLIP_PROBABILITY = 0.5

# --- Ensemble Execution ---
# Trajectories are simulated in fixed-size index batches so that results do not
# depend on how many workers process them.
TRAJECTORY_BATCH = 100
STEP_CHUNK = 4096       # Uniform draws fetched per trajectory per chunk
WORKERS = 1             # Worker processes for the ensemble runner

# --- Analysis Settings ---
MODEL = "both"                    # "quantum", "classical" or "both"
MAX_LAG = 100                     # Correlation lags, in steps
TRANSIENT_FRACTION = 0.2          # Leading fraction of each trajectory discarded
N_BLOCKS = 10                     # Trajectory blocks for MI standard errors
EMISSION_CONVENTION = "any-flip"  # Classical emission: "any-flip" or "down-flip"
MI_MODE = "ensemble"              # "ensemble" or "per-trajectory"
JOINT_ENCODING = "symbol"         # "symbol", "interleave" or "concatenate"
OUTPUT_DIR = "results"

# --- Figure Presets ---
FIG1_COUPLINGS = (0.0, 0.5, 3.0)
FIG2_COUPLINGS = (0.0, 0.1, 1.0, 3.0)
SWEEP_COUPLINGS = (0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0)
FIG4_RATIOS = (0.25, 1.0, 2.0, 6.0)

# Logarithmic drive-to-decay grid for the uncoupled complexity scan
FIG3_RATIO_MIN = 0.1
FIG3_RATIO_MAX = 20.0
FIG3_RATIO_POINTS = 25
# LZ vs omega at fixed gamma, and LZ vs gamma at fixed omega
FIG3_GAMMAS = (0.5, 1.0, 2.0)
FIG3_OMEGAS = (0.5, 1.0, 2.0)
FIG3_OMEGA_RANGE = (0.1, 10.0)
FIG3_GAMMA_RANGE = (0.1, 4.0)
FIG3_SWEEP_POINTS = 12
