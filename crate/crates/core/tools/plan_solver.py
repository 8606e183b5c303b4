r"""CP-SAT search for a sector routing table of RB(r).

Writes the plan text format read by ringwing (plans/rN.plan). Needs OR-Tools:

    pip install ortools
    python3 tools/plan_solver.py 4 --target 0 0 0 -o plans/r4.plan
    python3 tools/plan_solver.py 5 --target 0 16 8 --timeout 2000 -o plans/r5.plan
    python3 tools/plan_solver.py 6 --extend --corridor-new --free-ring --hint-from plans/r5.plan \
        --workers 8 --timeout 1200 -o r6.start
    python3 tools/plan_solver.py 6 --polish r6.start --window 2 --free-ring --workers 8 \
        --timeout 120 -o plans/r6.plan

The r = 6 table holds two copies of the r = 5 table fixed, threads the new
wraparound edges through corridors, then re-optimizes two rings at a time.

One sector holds 2^(r-2) rings. Each routed edge is described ring by ring:
an origin mode at its upper ring, a pass mode at every ring in between, and
an arrival mode at its lower ring. Lane positions are integers; two chords in
a region cross iff their boundary positions interleave.
"""
import argparse
import itertools
import sys
import time

from ortools.sat.python import cp_model


def edges_for(r):
    """Routed edges of one sector, as (ring, level) endpoint pairs."""
    K = 2 ** (r - 2)
    E = []
    for d in range(0, r - 2):
        i = d + 2
        cls = 'W' if i == r - 1 else f'I{i}'
        for t in range(K):
            if t >> d & 1:
                continue
            t2 = t + (1 << d)
            E.append(dict(cls=cls, up=(t, i), lo=(t2, (i + 1) % r)))
            E.append(dict(cls=cls, up=(t, (i + 1) % r), lo=(t2, i)))
    for n, e in enumerate(E):
        e['id'] = n
    return E


def solve(r, target=None, minimize=False, timeout=600, exact_ring=True, workers=1, max_routed=None,
          hint=None, fix_modes=False, progress=None, stop_at=None, horizon=None, fixed=None, free=None,
          Q=60, only=None, log=False, corridor=()):
    """With horizon H only rings 0..H are modelled; edges running below H are
    cut there and left open. Steps of `fixed` on rings outside free = (a, b)
    are held."""
    K = 2 ** (r - 2)
    H = K - 1 if horizon is None else horizon
    E = [e for e in edges_for(r) if e['up'][0] <= H and (only is None or (e['up'], e['lo']) in only)]
    for e in E:
        e['open'] = e['lo'][0] > H
        e['tl'] = H + 1 if e['open'] else e['lo'][0]
    by_id = {e['id']: e for e in E}
    la = list(range(2, r)) + [0]
    n = len(la)
    nseg = n - 1
    X = {lv: 1000 * (j + 1) for j, lv in enumerate(la)}
    jidx = {lv: j for j, lv in enumerate(la)}
    m = cp_model.CpModel()
    cat = lambda e: 'W' if e['cls'] == 'W' else 'I'
    alive = {t: [e for e in E if e['up'][0] <= t <= e['tl']] for t in range(H + 1)}

    role = {}   # (eid,t) -> dict of bools
    extra = {e['id']: [] for e in E}
    for e in E:
        i = e['id']; tu = e['up'][0]; tl = e['tl']; vu = e['up'][1]; vl = e['lo'][1]
        # origin
        opts = {}
        for sd in 'LR':
            for om in 'ATS':
                v = vu
                if om == 'A' and ((sd == 'L' and v == 2) or (sd == 'R' and v == 0)): continue
                if om == 'T' and ((sd == 'L' and v in (1, 2)) or (sd == 'R' and v in (0, 1))): continue
                if om == 'S' and not ((sd == 'L' and v == 2) or (sd == 'R' and v == 0)): continue
                opts[(sd, om)] = m.NewBoolVar(f'o{i}{sd}{om}')
        m.AddExactlyOne(opts.values())
        role[(i, tu)] = {'orig': opts}
        for (sd, om), b in opts.items():
            if om == 'S': extra[i].append((-1, b))
        for t in range(tu + 1, tl):
            corr = m.NewBoolVar(f'c{i}_{t}')
            xk = {k: m.NewBoolVar(f'xk{i}_{t}_{k}') for k in range(nseg)}
            m.AddExactlyOne([corr] + list(xk.values()))
            side = m.NewBoolVar(f'sR{i}_{t}')  # exit side R
            role[(i, t)] = {'corr': corr, 'xk': xk, 'sideR': side}
            if (e['up'], e['lo']) in corridor:
                m.Add(corr == 1)
            for b in xk.values(): extra[i].append((1, b))
        if e['open']:
            continue
        # termination
        D = m.NewBoolVar(f'D{i}')
        pk = {k: m.NewBoolVar(f'pk{i}_{k}') for k in range(nseg) if k not in (jidx[vl] - 1, jidx[vl])}
        m.AddExactlyOne([D] + list(pk.values()))
        role[(i, tl)] = {'D': D, 'pk': pk}
        for b in pk.values(): extra[i].append((1, b))

    xb = {}; q01 = {}; q12 = {}; key = {}
    for t in range(H + 1):
        for e in alive[t]:
            i = e['id']
            xb[(i, t)] = m.NewIntVar(1, 1000 * n + 999, f'xb{i}_{t}')
            q01[(i, t)] = m.NewIntVar(1, Q, f'qa{i}_{t}')
            q12[(i, t)] = m.NewIntVar(1, Q, f'qb{i}_{t}')
        m.AddAllDifferent([xb[(e['id'], t)] for e in alive[t]] + [X[lv] for lv in la])
        m.AddAllDifferent([q01[(e['id'], t)] for e in alive[t]])
        m.AddAllDifferent([q12[(e['id'], t)] for e in alive[t]])

    BLmax = 999; BRmin = 1000 * n + 1

    # role constraints on xb and exit kinds
    exitkind = {}  # (i,t) -> dict kind->bool  kinds: BL, SL, s12, s01, SR, BR
    for e in E:
        i = e['id']; tu = e['up'][0]; tl = e['tl']
        for t in range(tu, tl):
            ro = role[(i, t)]
            ek = {}
            if t == tu:
                o = ro['orig']
                def g(sd, om):
                    return o.get((sd, om))
                ek['BL'] = [g('L', 'A')]; ek['BR'] = [g('R', 'A')]
                ek['SL'] = [g('L', 'S')]; ek['SR'] = [g('R', 'S')]
                ek['s12'] = [g('L', 'T')]; ek['s01'] = [g('R', 'T')]
                ek = {k: [b for b in v if b is not None] for k, v in ek.items()}
                for b in ek['BL']: m.Add(xb[(i, t)] <= BLmax).OnlyEnforceIf(b)
                for b in ek['BR']: m.Add(xb[(i, t)] >= BRmin).OnlyEnforceIf(b)
            else:
                corr, s = ro['corr'], ro['sideR']
                bl = m.NewBoolVar(''); br = m.NewBoolVar('')
                m.AddBoolAnd([corr, s.Not()]).OnlyEnforceIf(bl); m.AddBoolOr([corr.Not(), s]).OnlyEnforceIf(bl.Not())
                m.AddBoolAnd([corr, s]).OnlyEnforceIf(br); m.AddBoolOr([corr.Not(), s.Not()]).OnlyEnforceIf(br.Not())
                m.Add(xb[(i, t)] <= BLmax).OnlyEnforceIf(bl)
                m.Add(xb[(i, t)] >= BRmin).OnlyEnforceIf(br)
                xany = m.NewBoolVar('')
                m.Add(sum(ro['xk'].values()) == 1).OnlyEnforceIf(xany)
                m.Add(sum(ro['xk'].values()) == 0).OnlyEnforceIf(xany.Not())
                x12 = m.NewBoolVar(''); x01 = m.NewBoolVar('')
                m.AddBoolAnd([xany, s.Not()]).OnlyEnforceIf(x12); m.AddBoolOr([xany.Not(), s]).OnlyEnforceIf(x12.Not())
                m.AddBoolAnd([xany, s]).OnlyEnforceIf(x01); m.AddBoolOr([xany.Not(), s.Not()]).OnlyEnforceIf(x01.Not())
                for k, b in ro['xk'].items():
                    m.Add(xb[(i, t)] > 1000 * (k + 1)).OnlyEnforceIf(b)
                    m.Add(xb[(i, t)] < 1000 * (k + 2)).OnlyEnforceIf(b)
                ek = {'BL': [bl], 'BR': [br], 'SL': [], 'SR': [], 's12': [x12], 's01': [x01]}
            exitkind[(i, t)] = ek
        if e['open']:
            continue
        ro = role[(i, tl)]
        for k, b in ro['pk'].items():
            m.Add(xb[(i, tl)] > 1000 * (k + 1)).OnlyEnforceIf(b)
            m.Add(xb[(i, tl)] < 1000 * (k + 2)).OnlyEnforceIf(b)

    # keys on the top line of A_t for t > t_u
    for e in E:
        i = e['id']; tu = e['up'][0]; tl = e['tl']
        for t in range(tu + 1, tl + (0 if e['open'] else 1)):
            ek = exitkind[(i, t - 1)]
            kv = m.NewIntVar(0, 20000 + 1000 * n, f'key{i}_{t}')
            for b in ek['BL']: m.Add(kv == xb[(i, t - 1)]).OnlyEnforceIf(b)
            for b in ek['SL']: m.Add(kv == 1000).OnlyEnforceIf(b)
            for b in ek['s12']: m.Add(kv == 1001 + Q - q12[(i, t - 1)]).OnlyEnforceIf(b)
            for b in ek['s01']: m.Add(kv == 5000 + q01[(i, t - 1)]).OnlyEnforceIf(b)
            for b in ek['SR']: m.Add(kv == 5000 + Q + 1).OnlyEnforceIf(b)
            for b in ek['BR']: m.Add(kv == 10000 + xb[(i, t - 1)]).OnlyEnforceIf(b)
            key[(i, t)] = kv

    # chords
    one = m.NewConstant(1)
    lt_cache = {}
    def lt(a, b):
        ka = ('c', a) if isinstance(a, int) else ('v', a.Index())
        kb = ('c', b) if isinstance(b, int) else ('v', b.Index())
        if isinstance(a, int) and isinstance(b, int):
            return a < b
        kk = (ka, kb)
        if kk in lt_cache: return lt_cache[kk]
        l = m.NewBoolVar('')
        m.Add(a < b).OnlyEnforceIf(l); m.Add(a >= b).OnlyEnforceIf(l.Not())
        lt_cache[kk] = l
        return l

    def affine(v, c, s):  # c + s*v as IntVar
        if isinstance(v, int): return c + s * v
        w = m.NewIntVar(-10**7, 10**7, '')
        m.Add(w == c + s * v)
        return w

    cross_terms = {}  # pair -> list of bools
    ends = {}
    for e in E:
        ends.setdefault(tuple(e['up']), []).append(e['id']); ends.setdefault(tuple(e['lo']), []).append(e['id'])
    adjacent = set()
    for ids in ends.values():
        for a in ids:
            for b in ids:
                if a != b: adjacent.add((a, b))
    def add_region(chords):
        # chords: list of (eid, presence_bool_or_True, p1, p2)
        for (e1, pr1, a1, a2, v1), (e2, pr2, b1, b2, v2) in itertools.combinations(chords, 2):
            adj = (e1, e2) in adjacent
            lits = [lt(a1, b1), lt(a2, b1), lt(a1, b2), lt(a2, b2)]
            const = False; vars_ = []
            for l in lits:
                if isinstance(l, bool): const ^= l
                else: vars_.append(l)
            if not vars_:
                if not const: continue
                cr = one
            else:
                cr = m.NewBoolVar('')
                # XOR(vars_) ^ const == cr
                if const:
                    m.AddBoolXOr(vars_ + [cr])
                else:
                    m.AddBoolXOr(vars_ + [cr.Not()])
            pres = [p for p in (pr1, pr2) if p is not True]
            if pres:
                c = m.NewBoolVar('')
                m.AddBoolAnd([cr] + pres).OnlyEnforceIf(c)
                m.AddBoolOr([cr.Not()] + [p.Not() for p in pres]).OnlyEnforceIf(c.Not())
            else:
                c = cr
            if adj:
                # adjacent edges: chords fanning out of the shared vertex are
                # ordered at realization time; any other crossing is forbidden
                if v1 is True and v2 is True:
                    continue
                if v1 is False or v2 is False:
                    m.Add(c == 0)
                else:
                    for v in (v1, v2):
                        if v is not True:
                            m.AddImplication(c, v) if c is not one else m.Add(v == 1)
                continue
            pair = (min(e1, e2), max(e1, e2))
            cross_terms.setdefault(pair, []).append(c)

    TOP = lambda kv: kv
    BOT = lambda x: affine(x, 10**6, -1)
    for t in range(H + 1):
        chA = []; chL = []
        for e in alive[t]:
            i = e['id']; tu = e['up'][0]; tl = e['tl']; vu = e['up'][1]; vl = e['lo'][1]
            ro = role[(i, t)]
            if t == tu:
                o = ro['orig']
                aA = [b for (sd, om), b in o.items() if om == 'A']
                if aA:
                    pres = aA[0] if len(aA) == 1 else None
                    if pres is None:
                        pres = m.NewBoolVar(''); m.Add(sum(aA) == 1).OnlyEnforceIf(pres); m.Add(sum(aA) == 0).OnlyEnforceIf(pres.Not())
                    chA.append((i, pres, 10**6 - X[vu], BOT(xb[(i, t)]), True))
                for (sd, om), b in o.items():
                    if om == 'T':
                        if sd == 'R':
                            chL.append((i, b, X[vu], affine(q01[(i, t)], 10**5 + Q, -1), True))
                        else:
                            chL.append((i, b, X[vu], affine(q12[(i, t)], 2 * 10**5, 1), True))
            elif t < tl:
                chA.append((i, True, TOP(key[(i, t)]), BOT(xb[(i, t)]), False))
                xany = [b for b in ro['xk'].values()]
                xa = m.NewBoolVar(''); m.Add(sum(xany) == 1).OnlyEnforceIf(xa); m.Add(sum(xany) == 0).OnlyEnforceIf(xa.Not())
                x01 = exitkind[(i, t)]['s01'][0]; x12 = exitkind[(i, t)]['s12'][0]
                chL.append((i, x01, xb[(i, t)], affine(q01[(i, t)], 10**5 + Q, -1), False))
                chL.append((i, x12, xb[(i, t)], affine(q12[(i, t)], 2 * 10**5, 1), False))
            else:
                # termination
                D = ro['D']
                bx = m.NewIntVar(0, 10**6, '')
                m.Add(bx == X[vl]).OnlyEnforceIf(D)
                m.Add(bx == xb[(i, t)]).OnlyEnforceIf(D.Not())
                chA.append((i, True, TOP(key[(i, t)]), BOT(bx), D))
                chL.append((i, D.Not(), xb[(i, t)], X[vl], True))
        add_region(chA)
        add_region(chL)

    # pair constraints
    vec = {'II': [], 'IW': [], 'WW': []}
    for (a, b), lst in cross_terms.items():
        m.Add(sum(lst) <= 1)
        c = ''.join(sorted(cat(by_id[a]) + cat(by_id[b])))
        vec[c] += lst
    ringx = {'I': [], 'W': []}
    for e in E:
        for c, b in extra[e['id']]:
            ringx[cat(e)].append((c, b))
    if exact_ring:
        for c in 'IW':
            m.Add(sum(cc * b for cc, b in ringx[c]) == 0)
    if target is not None:
        for k, tv in zip(['II', 'IW', 'WW'], target):
            if tv is None: continue
            m.Add(sum(vec[k]) == tv)
    total = sum(vec['II']) + sum(vec['IW']) + sum(vec['WW']) + sum(cc * b for c in 'IW' for cc, b in ringx[c])
    if max_routed is not None:
        m.Add(total <= max_routed)
    if minimize:
        m.Minimize(total)
    if fixed:
        merged = dict(hint or {})
        for k, steps in fixed.items():
            merged[k] = steps + merged.get(k, [])[len(steps):]
        add_hints(m, E, role, xb, q01, q12, merged, H=H, free=free)
    elif hint:
        add_hints(m, E, role, xb, q01, q12, hint, fix_modes, H)
    def extract(value):
        V = lambda x: value(x) if not isinstance(x, int) else x
        res = {'r': r, 'vec': [sum(value(b) for b in vec[k]) for k in ['II', 'IW', 'WW']],
               'ringx': {c: sum(cc * value(b) for cc, b in ringx[c]) for c in 'IW'}}
        plan = []
        for e in E:
            i = e['id']; tu = e['up'][0]; tl = e['tl']
            steps = []
            for t in range(tu, min(tl, H) + 1):
                ro = role[(i, t)]
                d = {'t': t, 'xb': V(xb[(i, t)]), 'q01': V(q01[(i, t)]), 'q12': V(q12[(i, t)])}
                if t == tu:
                    d['mode'] = [sd + om for (sd, om), b in ro['orig'].items() if value(b)][0]
                elif t < tl:
                    if value(ro['corr']):
                        d['mode'] = 'C' + ('R' if value(ro['sideR']) else 'L')
                    else:
                        k = [k for k, b in ro['xk'].items() if value(b)][0]
                        d['mode'] = 'X' + ('R' if value(ro['sideR']) else 'L'); d['seg'] = k
                else:
                    if value(ro['D']): d['mode'] = 'D'
                    else:
                        d['mode'] = 'P'; d['seg'] = [k for k, b in ro['pk'].items() if value(b)][0]
                steps.append(d)
            plan.append({'id': i, 'cls': e['cls'], 'up': e['up'], 'lo': e['lo'], 'steps': steps})
        res['plan'] = plan
        return res

    class Progress(cp_model.CpSolverSolutionCallback):
        """Writes each improving solution and stops once the total reaches stop_at."""

        def __init__(self):
            super().__init__()
            self.best = None

        def on_solution_callback(self):
            score = self.Value(total)
            print('solution', score, round(time.time() - t0, 1), file=sys.stderr, flush=True)
            if progress:
                with open(progress, 'w') as f:
                    f.write(plan_text(extract(self.Value)))
            if stop_at is not None and score <= stop_at:
                self.StopSearch()

    solver = cp_model.CpSolver()
    solver.parameters.repair_hint = bool(hint)
    solver.parameters.max_time_in_seconds = timeout
    solver.parameters.num_workers = workers
    solver.parameters.log_search_progress = log
    t0 = time.time()
    st = solver.Solve(m, Progress())
    print('status', solver.StatusName(st), time.time() - t0, file=sys.stderr)
    if st not in (cp_model.OPTIMAL, cp_model.FEASIBLE):
        return None
    return extract(solver.Value)


def rolling(r, window, timeout, **kw):
    """Solves rings in windows of `window` rings, top to bottom. Each window
    minimizes the crossings so far with every ring above it held fixed; its
    first ring is then committed."""
    K = 2 ** (r - 2)
    fixed = None
    for top in range(K):
        H = min(top + window - 1, K - 1)
        res = solve(r, minimize=True, timeout=timeout, horizon=H, fixed=fixed, free=(top, H), **kw)
        if res is None:
            return None
        print('rings', top, H, 'routed', res['vec'], res['ringx'], file=sys.stderr, flush=True)
        fixed = {(tuple(p['up']), tuple(p['lo'])): p['steps'] for p in res['plan']}
        if H == K - 1:
            return res
    return None


def score(res):
    return sum(res['vec']) + sum(res['ringx'].values())


def polish(r, plan, window, timeout, sweeps=1, out=None, **kw):
    """Large-neighbourhood descent: frees `window` consecutive rings, holds
    the rest of `plan` fixed and re-minimizes, sliding down the sector."""
    K = 2 ** (r - 2)
    Q = max([60] + [max(st['q01'], st['q12']) for steps in plan.values() for st in steps])
    best = None
    for sweep in range(sweeps):
        for top in range(max(K - window + 1, 1)):
            res = solve(r, minimize=True, timeout=timeout, fixed=plan, free=(top, top + window - 1), Q=Q, **kw)
            if res is None:
                continue
            if best is None or score(res) < score(best):
                best = res
                plan = {(tuple(p['up']), tuple(p['lo'])): p['steps'] for p in res['plan']}
                if out:
                    with open(out, 'w') as f:
                        f.write(plan_text(res))
            print('sweep', sweep, 'rings', top, 'total', score(best), best['vec'], file=sys.stderr, flush=True)
    return best


def parse_plan(text):
    """Plan text to {(up, lo): [step, ...]} with steps as dicts."""
    plan = {}
    r = None
    for line in text.splitlines():
        line = line.split('#')[0].split()
        if not line:
            continue
        if line[0] == 'r':
            r = int(line[1])
            continue
        up, lo = (int(line[0]), int(line[1])), (int(line[2]), int(line[3]))
        steps = []
        for tok in line[4:]:
            mode, xb, qa, qb = tok.split(':')
            step = {'xb': int(xb), 'q01': int(qa), 'q12': int(qb)}
            if mode[0] in 'XP' and mode[-1].isdigit():
                step['seg'] = int(mode.lstrip('XLRP'))
                mode = mode.rstrip('0123456789')
            step['mode'] = mode
            steps.append(step)
        plan[(up, lo)] = steps
    return r, plan


def doubled_hint(text):
    """Two copies of the plan for r - 1, one per half of the r sector. The old
    wraparound edges become the top inner class: their level-0 end moves to
    level r - 1, and lanes right of the arc shift by one vertex slot."""
    prev, plan = parse_plan(text)
    K = 2 ** (prev - 2)
    out = {}
    for (up, lo), steps in plan.items():
        lv = lambda l: prev if l == 0 else l
        for h in (0, 1):
            key = ((up[0] + h * K, lv(up[1])), (lo[0] + h * K, lv(lo[1])))
            shifted = []
            for st in steps:
                st = dict(st)
                if st['xb'] > 1000 * (prev - 1):
                    st['xb'] += 1000
                shifted.append(st)
            out[key] = shifted
    return out


def spread(plan, r, gap=2):
    """Re-spaces lane values ring by ring, order preserved, so that new lanes
    fit between the old ones."""
    vals = {}
    for (up, lo), steps in plan.items():
        for t, st in enumerate(steps, up[0]):
            vals.setdefault(t, set()).add(st['xb'])
    remap = {}
    for t, xs in vals.items():
        by_block = {}
        for x in xs:
            by_block.setdefault(x // 1000, []).append(x)
        for blk, xs in by_block.items():
            xs.sort()
            step = 999 // (len(xs) + 1)
            for n, x in enumerate(xs, 1):
                remap[(t, x)] = 1000 * blk + n * step
    out = {}
    for k, steps in plan.items():
        out[k] = [dict(st, xb=remap[(t, st['xb'])], q01=gap * st['q01'], q12=gap * st['q12'])
                  for t, st in enumerate(steps, k[0][0])]
    return out


def add_hints(m, E, role, xb, q01, q12, hint, fix_modes=False, H=None, free=None):
    """Hints every hinted variable. With fix_modes, the routing modes of each
    hinted edge whose origin mode is still legal become hard constraints.
    With free = (a, b), steps on rings outside a..b are fixed outright."""
    def pin(b, v, hard):
        if hard:
            m.Add(b == int(v))
        else:
            m.AddHint(b, v)
    for e in E:
        steps = hint.get((tuple(e['up']), tuple(e['lo'])))
        if steps is None:
            continue
        i, tu, tl = e['id'], e['up'][0], e['lo'][0]
        origin = steps[0]['mode']
        legal = any(sd + om == origin for sd, om in role[(i, tu)]['orig'])
        if not legal and free is not None:
            continue
        last = tl if H is None else min(tl, H)
        for t, st in zip(range(tu, last + 1), steps):
            ro = role[(i, t)]
            mode, seg = st['mode'], st.get('seg')
            hard = free is not None and not free[0] <= t <= free[1]
            hard_mode = hard or (fix_modes and legal)
            if t == tu:
                if not legal:
                    continue
                for (sd, om), b in ro['orig'].items():
                    pin(b, sd + om == mode, hard_mode)
            elif t < tl:
                pin(ro['corr'], mode[0] == 'C', hard_mode)
                pin(ro['sideR'], mode[1] == 'R', hard_mode)
                for k, b in ro['xk'].items():
                    pin(b, mode[0] == 'X' and seg == k, hard_mode)
            else:
                pin(ro['D'], mode == 'D', hard_mode)
                for k, b in ro['pk'].items():
                    pin(b, mode == 'P' and seg == k, hard_mode)
            pin(xb[(i, t)], st['xb'], hard)
            pin(q01[(i, t)], st['q01'], hard)
            pin(q12[(i, t)], st['q12'], hard)


def plan_text(res):
    r = res['r']
    out = [f"# sector routing table for r = {r}",
           f"# routed-routed crossings per sector (II IW WW): {' '.join(map(str, res['vec']))}",
           f"r {r}"]
    for p in res['plan']:
        toks = [str(p['up'][0]), str(p['up'][1]), str(p['lo'][0]), str(p['lo'][1])]
        for s in p['steps']:
            mode = s['mode'] + (str(s['seg']) if 'seg' in s else '')
            toks.append(f"{mode}:{s['xb']}:{s['q01']}:{s['q12']}")
        out.append(' '.join(toks))
    return '\n'.join(out) + '\n'


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument('r', type=int)
    ap.add_argument('--target', type=int, nargs=3, metavar=('II', 'IW', 'WW'),
                    help='exact routed-routed crossings per sector by class pair')
    ap.add_argument('--max-routed', type=int, help='cap on routed-routed crossings per sector')
    ap.add_argument('--minimize', action='store_true')
    ap.add_argument('--free-ring', action='store_true',
                    help='count ring-crossing deviations in the cap instead of balancing them per class')
    ap.add_argument('--hint-from', metavar='PLAN', help='plan for r - 1, doubled as a solution hint')
    ap.add_argument('--fix-hint-modes', action='store_true', help='keep the hinted routing modes fixed')
    ap.add_argument('--progress', metavar='PATH', help='write every improving solution here')
    ap.add_argument('--stop-at', type=int, help='stop once the minimized total is at most this')
    ap.add_argument('--rolling', action='store_true',
                    help='solve window by window from the top; --timeout applies per window')
    ap.add_argument('--polish', metavar='PLAN', help='improve a complete plan for r window by window')
    ap.add_argument('--extend', action='store_true',
                    help='hold the doubled --hint-from table fixed and route only the remaining edges')
    ap.add_argument('--corridor-new', action='store_true',
                    help='with --extend, pass the edges missing from the table through corridors only')
    ap.add_argument('--window', type=int, default=2, help='rings per window (default 2)')
    ap.add_argument('--sweeps', type=int, default=1, help='polish passes over the sector (default 1)')
    ap.add_argument('--timeout', type=float, default=600)
    ap.add_argument('--workers', type=int, default=1)
    ap.add_argument('--log', action='store_true', help='print the CP-SAT search log')
    ap.add_argument('-o', '--out', help='plan file (default: stdout)')
    args = ap.parse_args()
    hint = doubled_hint(open(args.hint_from).read()) if args.hint_from else None
    if args.polish:
        _, plan = parse_plan(open(args.polish).read())
        res = polish(args.r, plan, args.window, args.timeout, args.sweeps, out=args.out,
                     workers=args.workers, exact_ring=not args.free_ring)
    elif args.extend:
        K = 2 ** (args.r - 2)
        new = {(e['up'], e['lo']) for e in edges_for(args.r)} - set(hint) if args.corridor_new else ()
        res = solve(args.r, minimize=True, timeout=args.timeout, workers=args.workers, fixed=spread(hint, args.r),
                    free=(K, K), exact_ring=not args.free_ring, Q=120, progress=args.progress,
                    stop_at=args.stop_at, max_routed=args.max_routed, log=args.log, corridor=new)
    elif args.rolling:
        res = rolling(args.r, args.window, args.timeout, workers=args.workers, hint=hint,
                      exact_ring=not args.free_ring)
    else:
        res = solve(args.r, target=tuple(args.target) if args.target else None, minimize=args.minimize,
                    timeout=args.timeout, workers=args.workers, max_routed=args.max_routed,
                    exact_ring=not args.free_ring, hint=hint, fix_modes=args.fix_hint_modes,
                    progress=args.progress, stop_at=args.stop_at)
    if res is None:
        sys.exit(1)
    print('routed-routed per sector', res['vec'], file=sys.stderr)
    text = plan_text(res)
    if args.out:
        open(args.out, 'w').write(text)
    else:
        sys.stdout.write(text)


if __name__ == '__main__':
    main()
