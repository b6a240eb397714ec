VERSION = "0.3.0"

# every file format we read or write carries this version
FORMAT_VERSION = 1

# default caps for the brute-force parts of the lab
LIVE_EDGE_CAP = 10**7
SEED_SET_CAP = 10**5
EPSILON_NET_CAP = 10**6
LONGEST_PATH_NODES_CAP = 12

# numerical tolerances
GOM_TOLERANCE = 1e-9
PIVOT_TOLERANCE = 1e-10

# default number of simulations for Monte-Carlo spread evaluation
MC_SIMULATIONS = 10_000

CLIENT_NAME = "oimctl"
