"""Reference values for the interval relaxations, solved with SCS via cvxpy.

Plain Hankel matrices in the power basis, ball constraint 1 - x^2 included.
SCS stops being reliable in the power basis past d = 5.
"""
import cvxpy as cp
import numpy as np


def solve(d, objective_index, ball=True):
    y = cp.Variable(2 * d + 1)
    y2 = np.array([0.0 if k % 2 else 2.0 / (k + 1) for k in range(2 * d + 1)])

    def hankel(v, size, shift=0):
        return cp.bmat([[v[i + j + shift] for j in range(size)] for i in range(size)])

    cons = [hankel(y, d + 1) >> 0, hankel(y2 - y, d + 1) >> 0]
    cons.append(cp.bmat([[0.5 * y[i + j + 1] - y[i + j + 2] for j in range(d)]
                         for i in range(d)]) >> 0)
    if ball:
        cons.append(cp.bmat([[y[i + j] - y[i + j + 2] for j in range(d)]
                             for i in range(d)]) >> 0)
    prob = cp.Problem(cp.Maximize(y[objective_index]), cons)
    prob.solve(solver=cp.SCS, eps=1e-9, max_iters=200000)
    return prob.value


if __name__ == "__main__":
    for d in range(2, 6):
        print(d, repr(solve(d, 0)), repr(solve(d, 1)))
