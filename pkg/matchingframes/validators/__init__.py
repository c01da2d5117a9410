from matchingframes.validators._solver_configs import SolverConfigValidators
from matchingframes.validators._generator_configs import GeneratorConfigValidators
