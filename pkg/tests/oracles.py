"""Independent numeric oracles: coordinate charts and finite differences only.

Nothing here uses the package's structure constants or curvature code.
"""

import numpy as np


def riemann_fd(metric, x0, h1=1e-4, h2=1e-3):
    """All-lower Riemann tensor ``Rm[a, b, c, d] = g(R(d_c, d_d) d_b, d_a)`` at ``x0``.

    ``metric(x)`` returns the coordinate Gram matrix.  Christoffel symbols come
    from central differences (step ``h1``) and are differenced again (``h2``).
    """
    x0 = np.asarray(x0, dtype=float)
    dim = len(x0)
    eye = np.eye(dim)

    def christoffel(x):
        g = metric(x)
        dg = np.array([(metric(x + h1 * eye[c]) - metric(x - h1 * eye[c])) / (2 * h1) for c in range(dim)])
        # dg[c, a, b] = d_c g_ab ; Gamma^a_bc = 1/2 g^ad (d_b g_dc + d_c g_db - d_d g_bc)
        low = 0.5 * (np.einsum("bdc->dbc", dg) + np.einsum("cdb->dbc", dg) - dg)
        return np.einsum("ad,dbc->abc", np.linalg.inv(g), low)

    G = christoffel(x0)
    dG = np.array([(christoffel(x0 + h2 * eye[c]) - christoffel(x0 - h2 * eye[c])) / (2 * h2) for c in range(dim)])
    # R^a_bcd = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb
    R = (
        np.einsum("cadb->abcd", dG)
        - np.einsum("dacb->abcd", dG)
        + np.einsum("ace,edb->abcd", G, G)
        - np.einsum("ade,ecb->abcd", G, G)
    )
    return np.einsum("ae,ebcd->abcd", metric(x0), R)


# --- S^3 with a left-invariant metric -------------------------------------


def random_metric_frame(rng, spread=0.6):
    """Frame matrix ``Q1 diag(s) Q2`` with singular values in ``[1 - spread/2, 1 + spread]``."""
    q1, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    q2, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    s = rng.uniform(1 - spread / 2, 1 + spread, size=3)
    return q1 @ np.diag(s) @ q2


def sphere_chart(x):
    """Chart near ``(0, i)``: ``(x1 + i x2, x3 + i sqrt(1 - |x|^2))``."""
    x1, x2, x3 = x
    return np.array([x1 + 1j * x2, x3 + 1j * np.sqrt(1.0 - x1 * x1 - x2 * x2 - x3 * x3)])


def sphere_chart_jacobian(x):
    x1, x2, x3 = x
    r = np.sqrt(1.0 - x1 * x1 - x2 * x2 - x3 * x3)
    return np.array([
        [1.0, -1j * x1 / r],
        [1j, -1j * x2 / r],
        [0.0, 1.0 - 1j * x3 / r],
    ])  # row a = d(chart)/dx_a


def left_invariant_vectors(p):
    """Rows ``X'_1, X'_2, X'_3`` at ``p = (z, w)`` written out by hand."""
    z, w = p
    return np.array([[1j * z, 1j * w], [-np.conj(w), np.conj(z)], [-1j * np.conj(w), 1j * np.conj(z)]])


def left_invariant_metric(A):
    """Coordinate metric of ``sum_i omega_i^2`` with ``omega = omega' A``."""
    A = np.asarray(A, dtype=float)

    def metric(x):
        p = sphere_chart(x)
        J = sphere_chart_jacobian(x)
        Xs = left_invariant_vectors(p)
        primed = np.real(J @ Xs.conj().T)  # primed[a, j] = omega'_j(d_a)
        M = primed @ A  # M[a, i] = omega_i(d_a)
        return M @ M.T

    return metric


def frame_riemann_fd(A, x0=(0.05, -0.03, 0.02)):
    """``R[i, j, l, m] = <R(X_l, X_m) X_j, X_i>`` of the left-invariant frame of ``A``."""
    A = np.asarray(A, dtype=float)
    metric = left_invariant_metric(A)
    x0 = np.asarray(x0, dtype=float)
    Rm = riemann_fd(metric, x0)
    p = sphere_chart(x0)
    primed = np.real(sphere_chart_jacobian(x0) @ left_invariant_vectors(p).conj().T)
    M = primed @ A
    E = np.linalg.inv(M)  # E[i, a]: X_i = sum_a E[i, a] d_a
    return np.einsum("abcd,ia,jb,lc,md->ijlm", Rm, E, E, E, E)


# --- CP^2 with the Fubini-Study metric of holomorphic curvature 4 ------------


def fs_chart_metric(x):
    """Affine chart ``z_a = v_a / v_0`` with real coordinates ``(Re z1, Im z1, Re z2, Im z2)``."""
    z = x[0::2] + 1j * x[1::2]
    s = 1.0 + np.vdot(z, z).real
    basis = np.array([[1, 0], [1j, 0], [0, 1], [0, 1j]])  # dz for each real direction
    g = np.empty((4, 4))
    for a in range(4):
        for b in range(4):
            u, v = basis[a], basis[b]
            g[a, b] = (np.vdot(v, u).real * s - (np.vdot(z, u) * np.conj(np.vdot(z, v))).real) / s**2
    return g


def fs_chart_vector(v, u):
    """Chart tangent vector of ``[v]`` moved along the horizontal ``u`` (``v`` unit, ``v_0 != 0``)."""
    dz = (u[1:] * v[0] - v[1:] * u[0]) / v[0] ** 2
    out = np.empty(4)
    out[0::2], out[1::2] = dz.real, dz.imag
    return out


def fs_chart_point(v):
    z = v[1:] / v[0]
    out = np.empty(4)
    out[0::2], out[1::2] = z.real, z.imag
    return out


# --- derivatives along curves ----------------------------------------------


def sphere_curve(p, direction, s):
    q = np.asarray(p, dtype=complex) + s * np.asarray(direction, dtype=complex)
    return q / np.linalg.norm(q)


def directional_fd(f, p, direction, h=1e-5):
    """Central difference of ``f`` along the curve ``normalize(p + s direction)``."""
    return (f(sphere_curve(p, direction, h)) - f(sphere_curve(p, direction, -h))) / (2 * h)


def field_vector(p, coeffs):
    """Tangent vector of ``sum coeffs[a] X'_{a+1}`` at ``p`` in C^2."""
    return np.asarray(coeffs, dtype=float) @ left_invariant_vectors(p)
