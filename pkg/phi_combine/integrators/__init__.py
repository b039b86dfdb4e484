from .exprk import COEFFICIENTS, ExpRK4s6Coefficients, StepState, exprk4s6_step, integrate, observed_orders
