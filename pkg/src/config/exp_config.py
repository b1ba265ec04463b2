from fractions import Fraction

from .base_config import base_params

def get_campaign_parameters(static, updates):
    """
    Update base parameter values with the campaign parameter values.

    Parameters
    ----------
    static (dict): The base parameters.
    updates (dict): The campaign parameters.

    Returns
    -------
    dict : A dictionary of parameters for the campaign.
    """

    campaign_params = static.copy()
    campaign_params.update(updates)

    return campaign_params

identities = {
    'grid_step': Fraction(1, 20),
}

extremal = {
    'n': 18,
}

lemmas = {
    'trials': 10000,
    'interlacing_trials': 1000,
    'oracle_order': 10,
    'transfer_max_order': 24,
    'transfer_alphas': [Fraction(k, 10) for k in range(10)],
}

scan = {
    'alpha': Fraction(0),
}

campaign_params = {
    'identities': {
        'name': 'symbolic_identities',
        'parameters': get_campaign_parameters(base_params, identities),
    },
    'extremal': {
        'name': 'extremal_ordering',
        'parameters': get_campaign_parameters(base_params, extremal),
    },
    'lemmas': {
        'name': 'lemma_suites',
        'parameters': get_campaign_parameters(base_params, lemmas),
    },
    'scan': {
        'name': 'corpus_scan',
        'parameters': get_campaign_parameters(base_params, scan),
    },
}
