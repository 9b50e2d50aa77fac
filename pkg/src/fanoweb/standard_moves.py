"""Frozen link sequences for generator moves the closed forms do not cover.

Each entry connects a standard Mori fiber polygon to its image under one
GL(2,Z) generator.  The sequences were found once by the breadth-first
search oracle over class-constrained link moves and are re-validated on
every use (and in the test suite); see tools/freeze_moves.py.
"""

from __future__ import annotations

_DERIVED = {'T:F0': {'class': 'terminal',
          'joints': [{'kind': 'equal'}],
          'steps': [{'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, 0], [0, -1], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-1, -1], [-1, 0], [0, -1], [0, 1], [1, 0]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, -1], [-1, 0], [0, 1], [1, 0]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, -1], [-1, 0], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-1, -1], [-1, 0], [0, 1], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, -1], [-1, 0], [1, 0], [1, 1]]}}]},
 'T:F1': {'class': 'terminal',
          'joints': [{'kind': 'equal'}],
          'steps': [{'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, -1], [-1, 0], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-1, -1], [-1, 0], [0, 1], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, -1], [-1, 0], [1, 0], [1, 1]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, -1], [-1, 0], [1, 0], [1, 1]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-2, -1], [-1, -1], [-1, 0], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-2, -1], [-1, 0], [1, 0], [1, 1]]}}]},
 'T:F2': {'class': 'canonical',
          'joints': [{'kind': 'equal'}],
          'steps': [{'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-2, -1], [-1, 0], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-2, -1], [-1, 0], [0, 1], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-2, -1], [-1, 0], [1, 0], [1, 1]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-2, -1], [-1, 0], [1, 0], [1, 1]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-3, -1], [-2, -1], [-1, 0], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-3, -1], [-1, 0], [1, 0], [1, 1]]}}]},
 'T:P2': {'class': 'terminal',
          'joints': [{'kind': 'equal'}, {'kind': 'equal'}, {'kind': 'equal'}],
          'steps': [{'kind': 'III_m',
                     'left': {'dim': 2,
                              'fiber': [[-1, -1], [0, 1], [1, 0]],
                              'points': [[-1, -1], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, -1], [0, 1], [1, 0], [1, 1]],
                                'points': [[-1, -1], [0, 1], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, -1], [1, 1]],
                               'points': [[-1, -1], [0, 1], [1, 0], [1, 1]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, -1], [1, 1]],
                              'points': [[-1, -1], [0, 1], [1, 0], [1, 1]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, -1], [1, 1]],
                                'points': [[-1, -1], [-1, 0], [0, 1], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, -1], [1, 1]],
                               'points': [[-1, -1], [-1, 0], [1, 0], [1, 1]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, -1], [1, 1]],
                              'points': [[-1, -1], [-1, 0], [1, 0], [1, 1]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, -1], [1, 1]],
                                'points': [[-2, -1], [-1, -1], [-1, 0], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, -1], [1, 1]],
                               'points': [[-2, -1], [-1, -1], [1, 0], [1, 1]]}},
                    {'kind': 'I_m',
                     'left': {'dim': 2,
                              'fiber': [[-1, -1], [1, 1]],
                              'points': [[-2, -1], [-1, -1], [1, 0], [1, 1]]},
                     'middle': {'dim': 2,
                                'fiber': [[-2, -1], [-1, -1], [1, 0], [1, 1]],
                                'points': [[-2, -1], [-1, -1], [1, 0], [1, 1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-2, -1], [1, 0], [1, 1]],
                               'points': [[-2, -1], [1, 0], [1, 1]]}}]},
 'U:F1': {'class': 'terminal',
          'joints': [{'kind': 'equal'}],
          'steps': [{'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, -1], [-1, 0], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-1, -1], [-1, 0], [0, -1], [0, 1], [1, 0]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, 0], [0, -1], [0, 1], [1, 0]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, 0], [0, -1], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-1, 0], [0, -1], [0, 1], [1, -1], [1, 0]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, 0], [0, 1], [1, -1], [1, 0]]}}]},
 'U:F2': {'class': 'canonical',
          'joints': [{'kind': 'equal'}, {'kind': 'equal'}, {'kind': 'equal'}],
          'steps': [{'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-2, -1], [-1, 0], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-2, -1], [-1, -1], [-1, 0], [0, 1], [1, 0]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, -1], [-1, 0], [0, 1], [1, 0]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, -1], [-1, 0], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-1, -1], [-1, 0], [0, -1], [0, 1], [1, 0]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, 0], [0, -1], [0, 1], [1, 0]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, 0], [0, -1], [0, 1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-1, 0], [0, -1], [0, 1], [1, -1], [1, 0]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, 0], [0, 1], [1, -1], [1, 0]]}},
                    {'kind': 'II_ni',
                     'left': {'dim': 2,
                              'fiber': [[-1, 0], [1, 0]],
                              'points': [[-1, 0], [0, 1], [1, -1], [1, 0]]},
                     'middle': {'dim': 2,
                                'fiber': [[-1, 0], [1, 0]],
                                'points': [[-1, 0], [0, 1], [1, -1], [1, 0], [2, -1]]},
                     'mode': 'polytope',
                     'right': {'dim': 2,
                               'fiber': [[-1, 0], [1, 0]],
                               'points': [[-1, 0], [0, 1], [1, 0], [2, -1]]}}]}}

def derived_forward_sequence(token, key):
    from .jsonio import sequence_from_json

    data = _DERIVED.get(f"{token}:{key}")
    if data is None:
        raise KeyError(f"no stored move for generator {token} on {key}")
    return sequence_from_json(data)
