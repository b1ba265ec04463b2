from fractions import Fraction

base_params = {
    'alpha': Fraction(0),
    'tol': 1e-10,
    'margin': 1e-6,
    'transfer_margin': 1e-9,
    'agreement_tol': 1e-8,
    'seed': 92,
    'workers': 1,
    'trials': 10000,
    'oracle_cap': 24,
    'alpha_grid': [Fraction(k, 8) for k in range(5)],
    'orders': [18, 20],
}
