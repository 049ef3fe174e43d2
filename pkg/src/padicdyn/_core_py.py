"""Pure-Python kernels for exhaustive finite-ring dynamics.

Same signatures as the compiled module padicdyn._core; selected as a
fallback when the extension is unavailable (or forced via PADICDYN_PURE).
Elements of O_F/pi^M are mixed-radix packed integers; ring data arrives
as flat coefficient vectors prepared by padicdyn.oracle.
"""


def _urow_mul(a, b, f, pmQ, ured):
    if f == 1:
        return [a[0] * b[0] % pmQ]
    conv = [0] * (2 * f - 1)
    for i in range(f):
        ai = a[i]
        if ai:
            for j in range(f):
                conv[i + j] = (conv[i + j] + ai * b[j]) % pmQ
    for k in range(2 * f - 2, f - 1, -1):
        ck = conv[k]
        if ck:
            for j in range(f):
                if ured[j]:
                    conv[k - f + j] = (conv[k - f + j] + ck * ured[j]) % pmQ
    return conv[:f]


def _ring_mul(a, b, f, e, pmQ, ured, ered):
    if e == 1:
        return _urow_mul(a, b, f, pmQ, ured)
    rows = [[0] * f for _ in range(2 * e - 1)]
    for i1 in range(e):
        r1 = a[i1 * f : (i1 + 1) * f]
        if not any(r1):
            continue
        for i2 in range(e):
            r2 = b[i2 * f : (i2 + 1) * f]
            if not any(r2):
                continue
            prod = _urow_mul(r1, r2, f, pmQ, ured)
            tgt = rows[i1 + i2]
            for j in range(f):
                tgt[j] = (tgt[j] + prod[j]) % pmQ
    for k in range(2 * e - 2, e - 1, -1):
        rk = rows[k]
        if not any(rk):
            continue
        for i in range(e):
            erow = ered[i * f : (i + 1) * f]
            if any(erow):
                prod = _urow_mul(rk, erow, f, pmQ, ured)
                tgt = rows[k - e + i]
                for j in range(f):
                    tgt[j] = (tgt[j] + prod[j]) % pmQ
    out = []
    for i in range(e):
        out.extend(rows[i])
    return out


def eval_table(p, f, e, pmQ, mods, ured, ered, poly, deg, size, out):
    """out[i] = packed index of phi(x_i) for every element of O_F/pi^M."""
    ef = e * f
    mods = list(mods)
    ured = list(ured)
    ered = list(ered)
    top = [c % pmQ for c in poly[deg * ef : (deg + 1) * ef]]
    coeff_rows = [
        [c % pmQ for c in poly[ci * ef : (ci + 1) * ef]] for ci in range(deg)
    ]
    for idx in range(size):
        k = idx
        x = [0] * ef
        for i in range(e):
            mi = mods[i]
            for j in range(f):
                k, d = divmod(k, mi)
                x[i * f + j] = d
        acc = list(top)
        for ci in range(deg - 1, -1, -1):
            acc = _ring_mul(acc, x, f, e, pmQ, ured, ered)
            crow = coeff_rows[ci]
            for t in range(ef):
                acc[t] = (acc[t] + crow[t]) % pmQ
        pk = 0
        stride = 1
        for i in range(e):
            mi = mods[i]
            for j in range(f):
                pk += (acc[i * f + j] % mi) * stride
                stride *= mi
        out[idx] = pk
    return out


def census(table, size, tails, cyclens):
    """Rho-shape decomposition of a functional graph given as a successor table."""
    color = bytearray(size)  # 0 unvisited, 1 on current path, 2 finished
    pos = [0] * size
    path = []
    for s in range(size):
        if color[s]:
            continue
        path.clear()
        x = s
        while color[x] == 0:
            color[x] = 1
            pos[x] = len(path)
            path.append(x)
            x = table[x]
        if color[x] == 1:
            cstart = pos[x]
            clen = len(path) - cstart
            for i in range(cstart, len(path)):
                node = path[i]
                tails[node] = 0
                cyclens[node] = clen
                color[node] = 2
            for i in range(cstart - 1, -1, -1):
                node = path[i]
                tails[node] = cstart - i
                cyclens[node] = clen
                color[node] = 2
        else:
            bt = tails[x]
            bc = cyclens[x]
            n = len(path)
            for i in range(n - 1, -1, -1):
                node = path[i]
                tails[node] = bt + (n - i)
                cyclens[node] = bc
                color[node] = 2
    return tails, cyclens
