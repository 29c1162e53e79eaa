"""Joint law of two members and the best mean-square predictor.

Members n and n+k are two linear images of the same seed pair; inverting the
integer map (Jacobian = a Fibonacci number, by d'Ocagne's identity) gives
their joint density on a wedge or parallelogram. The conditional mean of the
later member given the earlier one is then a quadrature away, with a closed
form for the benchmark case n=4, k=3, exponential seeds.
"""

import numpy as np

from fsrv.joint_predict import (
    joint_law,
    joint_normalization_check,
    joint_pdf,
    joint_support,
    predict,
    predict_exponential_4_to_7,
)
from fsrv.marginal import exponential_model, uniform_model

law = joint_law(4, 3)
exp_model = exponential_model()
print(f"coefficients (a_3, a_4, a_6, a_7) = {law.coeff_matrix}, jacobian {law.jacobian}")

print("\nconditional support of member 7 given member 4 = x (exponential seeds):")
for x in (1.0, 3.0, 6.0):
    lo, hi = joint_support(law, exp_model, x)
    print(f"  x={x:4.1f}: member 7 confined to [{lo:.4f}, {hi:.4f}]")

print("\njoint density along the slice x=3:")
for y in np.linspace(12.0, 13.0, 6):
    print(f"  f(3, {y:7.4f}) = {joint_pdf(law, exp_model, 3.0, float(y)):.6f}")

for model, name in ((exp_model, "exponential"), (uniform_model(), "uniform")):
    mass = joint_normalization_check(law, model)
    print(f"total joint mass, {name} seeds: {mass:.9f}")

print("\npredictor of member 7 from member 4 (quadrature vs closed form):")
print(f"{'x':>6} {'E[X7|X4=x]':>12} {'closed':>12} {'linear bound 4x..13x/3':>24}")
for x in (0.5, 2.0, 6.0, 12.0):
    g = predict(law, exp_model, x)
    print(f"{x:6.2f} {g:12.6f} {predict_exponential_4_to_7(x):12.6f} "
          f"{'[%7.3f, %7.3f]' % (4 * x, 13 * x / 3):>24}")
