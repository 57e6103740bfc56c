"""
Tabla declarativa de escenarios de experimento. Cada escenario tiene una o
varias variantes (overrides sobre la configuración base) y, si procede, los
umbrales que debe alcanzar la evaluación greedy final.
"""

MARKOV = {'kind': 'markov'}
PERIODIC = {'kind': 'periodic', 'periodic': {'num_groups': 4, 'switch_prob': 0.75}}
CORRELATED = {'kind': 'correlated'}

SCENARIOS = [
    {'key': 'markov_few_users',
     'variants': [{'label': 'qmix', 'overrides': {'num_users': 3, 'num_sensed': 4, 'epoch_max': 300, 'env': MARKOV}}],
     'expect': {'success_rate': 0.85, 'oracle_ratio': 0.90}},
    {'key': 'markov_many_users',
     'variants': [{'label': 'qmix', 'overrides': {'num_users': 6, 'num_sensed': 4, 'epoch_max': 300, 'env': MARKOV}}],
     'expect': {'success_rate': 0.80, 'oracle_ratio': 0.85}},
    {'key': 'markov_qmix_vs_iql',
     'variants': [
         {'label': 'qmix', 'overrides': {'num_users': 6, 'num_sensed': 2, 'algorithm': 'qmix', 'env': MARKOV}},
         {'label': 'iql', 'overrides': {'num_users': 6, 'num_sensed': 2, 'algorithm': 'iql', 'env': MARKOV}},
     ],
     'compare': {'better': 'qmix', 'worse': 'iql', 'margin': 0.10}},
    {'key': 'markov_users_sweep',
     'variants': [{'label': f'n{n}', 'overrides': {'num_users': n, 'num_sensed': 2, 'env': MARKOV}}
                  for n in (3, 6, 9, 15, 21)]},
    {'key': 'markov_sensing_sweep',
     'variants': [{'label': f'm{m}', 'overrides': {'num_users': 3, 'num_sensed': m, 'env': MARKOV}}
                  for m in (1, 2, 3, 4)]},
    {'key': 'periodic',
     'variants': [{'label': 'qmix', 'overrides': {'num_users': 3, 'num_sensed': 2, 'epoch_max': 200, 'env': PERIODIC}}],
     'expect': {'oracle_ratio': 0.90}},
    {'key': 'correlated',
     'variants': [{'label': 'qmix',
                   'overrides': {'num_users': 3, 'num_sensed': 2, 'epoch_max': 200, 'env': CORRELATED}}],
     'expect': {'oracle_ratio': 0.85, 'structure': True}},
    {'key': 'periodic_to_correlated',
     'variants': [{'label': 'qmix',
                   'overrides': {'num_users': 3, 'num_sensed': 2, 'epoch_max': 300, 'reset_on_degradation': True,
                                 'env': {'kind': 'switching',
                                         'switching': {'first': 'periodic', 'second': 'correlated',
                                                       'switch_epoch': 150}}}}],
     'expect': {'oracle_ratio': 0.80, 'detect_within': 50, 'structure': True}},
    {'key': 'markov_to_markov',
     'variants': [{'label': 'qmix',
                   'overrides': {'num_users': 3, 'num_sensed': 2, 'epoch_max': 300, 'reset_on_degradation': True,
                                 'env': {'kind': 'switching',
                                         'switching': {'first': 'markov', 'second': 'markov',
                                                       'switch_epoch': 150}}}}],
     'expect': {'oracle_ratio': 0.80, 'detect_within': 50}},
    {'key': 'trace',
     'variants': [{'label': 'qmix', 'overrides': {'num_users': 3, 'num_sensed': 1, 'env': {'kind': 'trace'}}}],
     'expect': {'oracle_ratio': 0.80}},
]
