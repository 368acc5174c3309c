"""The spectral-viscosity multiplier and the decay-regime validator.

Dissipation acts per mode as -eps_N (2 pi |k|)^2 Q_k with the smooth cutoff
Q_k = 1 - exp(-(|k|/k0)^alpha).  With the standard choice k0 = N/3 and
alpha = 18 the damping is < 1e-9 below |k| = 0.1 N and > 1 - 1e-11 above
|k| = 0.4 N, so low modes evolve inviscidly.  The regime validator reports
whether a (theta, s, p) parameter choice guarantees high-mode spectral
decay, and how far the practical epsilon/N_G scaling sits from it.
"""

from sveuler import RegimeParams, format_regime_report, parse_config_text, validate, validate_regime
from sveuler.sv import q_cutoff

n = 128
k0 = n / 3.0
print(f"cutoff profile at N = {n}, k0 = N/3, alpha = 18:")
for frac in (0.05, 0.1, 0.2, 1 / 3, 0.4, 0.6, 1.0):
    q = q_cutoff(frac * n, k0, 18.0)
    print(f"  |k| = {frac:>5.2f} N   Q = {q:.6e}")

print()
print("valid regime (vorticity in L2, theta = 0.4, s = 7):")
print(format_regime_report(validate_regime(RegimeParams(p=2.0, theta=0.4, s=7.0), n)))

print()
print("boundary case theta = 0.5 is rejected (strict inequality):")
report = validate_regime(RegimeParams(p=2.0, theta=0.5, s=7.0), n)
print("  valid =", report.valid, "|", "; ".join(report.violations))

print()
print("full config-level report with practicality warnings:")
cfg = parse_config_text("experiment = thin_sheet\nn_modes = 128\n")
print(validate(cfg))
