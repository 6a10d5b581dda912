"""Self-contained CDCL SAT solver for desk-scale checks.

Conflict-driven clause learning with two watched literals, first-UIP
learning with local clause minimization, activity-based decisions, saved
phases defaulting to false, geometric restarts, and learnt-clause
deletion. Fully deterministic: identical inputs produce identical runs.

External interface uses DIMACS conventions: variables 1..n, literals
signed integers. Internally literal 2v encodes +(v+1) and 2v+1 encodes
-(v+1).
"""

import heapq

from .errors import PreconditionViolated, ResourceLimit


class MiniSolver:
    def __init__(self, num_vars=0):
        self.ok = True
        self.nvars = 0
        self.db = []
        self.learnt_from = 0  # clause ids below this are problem clauses
        self.cl_act = {}
        self.watches = []
        self.val = []
        self.lvl = []
        self.reason = []
        self.phase = []
        self.act = []
        self.heap = []
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.var_inc = 1.0
        self.cl_inc = 1.0
        self.conflicts = 0
        self._model = None
        self._seen = []
        self.ensure_vars(num_vars)

    # -- construction -----------------------------------------------------

    def ensure_vars(self, n):
        while self.nvars < n:
            self.watches.append([])
            self.watches.append([])
            self.val.append(0)
            self.lvl.append(0)
            self.reason.append(-1)
            self.phase.append(False)
            self.act.append(0.0)
            self._seen.append(0)
            heapq.heappush(self.heap, (0.0, self.nvars))
            self.nvars += 1

    @property
    def num_vars(self):
        return self.nvars

    def add_clause(self, lits):
        """Add a clause of external literals. Duplicates collapse, opposite
        literals make the clause vacuous, literals already false at the root
        are dropped."""
        if not self.ok:
            return
        self._cancel_until(0)
        ext = sorted(set(lits), key=abs)
        for x in ext:
            if x == 0:
                raise PreconditionViolated("literal 0 in clause")
            self.ensure_vars(abs(x))
        ints = []
        for x in ext:
            l = ((abs(x) - 1) << 1) | (x < 0)
            if (l ^ 1) in ints:
                return  # tautology
            v = l >> 1
            s = self.val[v]
            if s != 0:
                if s == 1 - ((l & 1) << 1):
                    return  # satisfied at root
                continue  # false at root: drop literal
            ints.append(l)
        if not ints:
            self.ok = False
            return
        if len(ints) == 1:
            self._assign(ints[0], -1)
            if self._propagate() is not None:
                self.ok = False
            return
        cid = len(self.db)
        self.db.append(ints)
        self.watches[ints[0]].append(cid)
        self.watches[ints[1]].append(cid)
        self.learnt_from = len(self.db)

    def add_formula(self, formula):
        self.ensure_vars(formula.num_vars)
        for cl in formula.clauses:
            if not self.ok:
                return
            self.add_clause(cl)

    # -- core machinery ----------------------------------------------------

    def _assign(self, l, cid):
        v = l >> 1
        self.val[v] = 1 - ((l & 1) << 1)
        self.lvl[v] = len(self.trail_lim)
        self.reason[v] = cid
        self.trail.append(l)

    def _cancel_until(self, lvl):
        if len(self.trail_lim) <= lvl:
            return
        bound = self.trail_lim[lvl]
        heap, act, val, phase = self.heap, self.act, self.val, self.phase
        for i in range(len(self.trail) - 1, bound - 1, -1):
            l = self.trail[i]
            v = l >> 1
            phase[v] = val[v] > 0
            val[v] = 0
            heapq.heappush(heap, (-act[v], v))
        del self.trail[bound:]
        del self.trail_lim[lvl:]
        self.qhead = min(self.qhead, bound)

    def _propagate(self):
        val, watches, db, trail = self.val, self.watches, self.db, self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            fl = p ^ 1
            ws = watches[fl]
            i = j = 0
            nws = len(ws)
            while i < nws:
                cid = ws[i]
                i += 1
                cl = db[cid]
                if cl[0] == fl:
                    cl[0] = cl[1]
                    cl[1] = fl
                first = cl[0]
                fv = val[first >> 1]
                if fv != 0 and fv == 1 - ((first & 1) << 1):
                    ws[j] = cid
                    j += 1
                    continue
                found = False
                for k in range(2, len(cl)):
                    lk = cl[k]
                    kv = val[lk >> 1]
                    if kv == 0 or kv == 1 - ((lk & 1) << 1):
                        cl[1] = lk
                        cl[k] = fl
                        watches[lk].append(cid)
                        found = True
                        break
                if found:
                    continue
                ws[j] = cid
                j += 1
                if fv != 0:  # first watch false too: conflict
                    while i < nws:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    self.qhead = len(trail)
                    return cid
                self._assign(first, cid)
            del ws[j:]
        return None

    def _bump_var(self, v):
        self.act[v] += self.var_inc
        if self.act[v] > 1e100:
            for u in range(self.nvars):
                self.act[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.act[u], u) for u in range(self.nvars)
                         if self.val[u] == 0]
            heapq.heapify(self.heap)
            return
        heapq.heappush(self.heap, (-self.act[v], v))

    def _bump_clause(self, cid):
        if cid >= self.learnt_from:
            a = self.cl_act.get(cid, 0.0) + self.cl_inc
            self.cl_act[cid] = a
            if a > 1e20:
                for k in self.cl_act:
                    self.cl_act[k] *= 1e-20
                self.cl_inc *= 1e-20

    def _analyze(self, cid):
        seen = self._seen
        lvl, reason, trail, db = self.lvl, self.reason, self.trail, self.db
        cur = len(self.trail_lim)
        learnt = [0]
        touched = []
        cnt = 0
        p = -1
        idx = len(trail) - 1
        while True:
            self._bump_clause(cid)
            cl = db[cid]
            for l in (cl if p == -1 else cl[1:]):
                v = l >> 1
                if not seen[v] and lvl[v] > 0:
                    seen[v] = 1
                    touched.append(v)
                    self._bump_var(v)
                    if lvl[v] >= cur:
                        cnt += 1
                    else:
                        learnt.append(l)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            v = p >> 1
            cid = reason[v]
            seen[v] = 0
            idx -= 1
            cnt -= 1
            if cnt == 0:
                break
        learnt[0] = p ^ 1

        # local minimization: drop literals whose whole reason is marked
        out = [learnt[0]]
        for l in learnt[1:]:
            v = l >> 1
            r = reason[v]
            if r == -1:
                out.append(l)
                continue
            if all(seen[q >> 1] or lvl[q >> 1] == 0 for q in db[r][1:]):
                continue
            out.append(l)
        for v in touched:
            seen[v] = 0

        if len(out) == 1:
            return out, 0
        # move a highest-level literal into the second watch slot
        bi = max(range(1, len(out)), key=lambda i: lvl[out[i] >> 1])
        out[1], out[bi] = out[bi], out[1]
        return out, lvl[out[1] >> 1]

    def _record(self, out):
        if len(out) == 1:
            self._assign(out[0], -1)
            return
        cid = len(self.db)
        self.db.append(out)
        self.watches[out[0]].append(cid)
        self.watches[out[1]].append(cid)
        self.cl_act[cid] = self.cl_inc
        self._assign(out[0], cid)

    def _reduce_db(self):
        # at level 0 only; drop the less active half of long learnt clauses
        cids = [c for c in range(self.learnt_from, len(self.db))
                if self.db[c] is not None and len(self.db[c]) > 2]
        if len(cids) < 100:
            return
        cids.sort(key=lambda c: self.cl_act.get(c, 0.0))
        locked = set()
        for l in self.trail:
            r = self.reason[l >> 1]
            if r != -1:
                locked.add(r)
        for c in cids[: len(cids) // 2]:
            if c in locked:
                continue
            cl = self.db[c]
            self.watches[cl[0]].remove(c)
            self.watches[cl[1]].remove(c)
            self.db[c] = None
            self.cl_act.pop(c, None)

    def _decide(self):
        val, heap = self.val, self.heap
        while heap:
            _, v = heapq.heappop(heap)
            if val[v] == 0:
                return v
        for v in range(self.nvars):
            if val[v] == 0:
                return v
        return -1

    # -- public solving entry points ---------------------------------------

    def solve(self, assumptions=(), conflict_budget=None):
        """True if satisfiable under the assumptions, False otherwise.
        Raises ResourceLimit when the conflict budget runs out."""
        if not self.ok:
            return False
        self._cancel_until(0)
        self._model = None
        if self._propagate() is not None:
            self.ok = False
            return False
        assume = []
        for x in assumptions:
            self.ensure_vars(abs(x))
            assume.append(((abs(x) - 1) << 1) | (x < 0))
        budget_left = conflict_budget
        restart_lim = 100
        since_restart = 0
        while True:
            cid = self._propagate()
            if cid is not None:
                self.conflicts += 1
                since_restart += 1
                if budget_left is not None:
                    budget_left -= 1
                    if budget_left < 0:
                        self._cancel_until(0)
                        raise ResourceLimit("conflict budget exhausted")
                if not self.trail_lim:
                    self.ok = False
                    return False
                out, back = self._analyze(cid)
                self._cancel_until(back)
                self._record(out)
                self.var_inc /= 0.95
                self.cl_inc /= 0.999
                continue
            if since_restart >= restart_lim:
                since_restart = 0
                restart_lim = int(restart_lim * 1.5)
                self._cancel_until(0)
                self._reduce_db()
                continue
            lvl = len(self.trail_lim)
            if lvl < len(assume):
                a = assume[lvl]
                av = self.val[a >> 1]
                if av == 1 - ((a & 1) << 1):
                    self.trail_lim.append(len(self.trail))  # already true
                    continue
                if av != 0:
                    self._cancel_until(0)
                    return False  # assumption contradicted
                self.trail_lim.append(len(self.trail))
                self._assign(a, -1)
                continue
            v = self._decide()
            if v == -1:
                self._model = self.val[:]
                self._cancel_until(0)
                return True
            self.trail_lim.append(len(self.trail))
            self._assign((v << 1) | (not self.phase[v]), -1)

    def model_value(self, var):
        """Truth of an external variable in the last satisfying model."""
        if self._model is None:
            raise PreconditionViolated("no model available")
        return self._model[var - 1] > 0

    def model_literals(self, variables=None):
        if self._model is None:
            raise PreconditionViolated("no model available")
        vs = variables if variables is not None else range(1, self.nvars + 1)
        return tuple(v if self._model[v - 1] > 0 else -v for v in vs)

    def propagate_check(self, lits):
        """True when asserting the literals and unit propagating yields a
        conflict; leaves the solver at the root level."""
        if not self.ok:
            return True
        self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return True
        self.trail_lim.append(len(self.trail))
        conflict = False
        for x in lits:
            self.ensure_vars(abs(x))
            l = ((abs(x) - 1) << 1) | (x < 0)
            s = self.val[l >> 1]
            if s != 0:
                if s != 1 - ((l & 1) << 1):
                    conflict = True
                    break
                continue
            self._assign(l, -1)
            if self._propagate() is not None:
                conflict = True
                break
        self._cancel_until(0)
        return conflict

    def enumerate_models(self, variables, conflict_budget=None):
        """Yield each satisfying assignment projected onto the given
        external variables, blocking every one found. The projection set
        must make models distinct on it, or duplicates are blocked wholesale.
        The budget spans the whole enumeration."""
        while self.solve(conflict_budget=conflict_budget):
            lits = self.model_literals(variables)
            yield lits
            self.add_clause([-x for x in lits])


def solve_formula(formula, assumptions=(), conflict_budget=None):
    s = MiniSolver(formula.num_vars)
    s.add_formula(formula)
    return s, s.solve(assumptions, conflict_budget)
