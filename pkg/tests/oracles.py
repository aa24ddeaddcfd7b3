"""Independent high-precision evaluations used as test oracles."""
import mpmath as mp


def f_volume_bound_mp(n, A, eps, dps=30):
    """The f-volume lower-bound formula evaluated directly in mpmath."""
    with mp.workdps(dps):
        n, A, eps = mp.mpf(n), mp.mpf(A), mp.mpf(eps)
        omega = mp.pi ** (n / 2) / mp.gamma(n / 2 + 1)
        a = (1 + 4 * eps**0.25 + 8 * eps**0.5) ** (-n / 2 + eps) * mp.exp(eps / 2 * mp.log(eps))
        k = mp.sqrt(A)
        x = eps**0.25
        # s = x t maps the ball integral to [0, 1]; the eps^(n/4) factor cancels
        c = n * omega * mp.quad(lambda t: (t * mp.sinc(k * x * t)) ** (n - 1), [0, 1])
        r0 = eps**0.25 + 2 * eps**0.5
        b = n - 1 - 2 * n * eps
        tail = 2**b * mp.gammainc((b + 1) / 2, r0**2 / 4)
        return float(mp.exp(-eps) * (4 * mp.pi) ** (-n / 2) * (n - 2 * eps) * a * c * tail)
