# cython: language_level=3
"""Conflict-driven clause-learning SAT solver kernel.

Written as single-source pure Python that Cython can compile unchanged; the
build produces an extension module that shadows this file, and COMPILED
reports which version is running. The search is fully deterministic: fixed
variable order on activity ties, fixed Luby restart schedule, no randomness.

Literals are DIMACS-signed integers at the API boundary and are encoded
internally as 2*var / 2*var+1 (positive/negative) for dense indexing.
"""

try:
    import cython

    COMPILED = bool(cython.compiled)
except ImportError:  # pragma: no cover - cython is a build convenience only
    COMPILED = False


def luby(i):
    """i-th element (1-based) of the Luby restart sequence."""
    k = 1
    while (1 << (k + 1)) - 1 <= i:
        k += 1
    while (1 << k) - 1 != i:
        i = i - (1 << (k - 1)) + 1
        k = 1
        while (1 << (k + 1)) - 1 <= i:
            k += 1
    return 1 << (k - 1)


class Solver:
    def __init__(self):
        self.nvars = 0
        self.clauses = []  # list[list[int]] encoded lits; first two watched
        self.watches = [[], []]  # per encoded literal
        self.assigns = [0]  # per var: 0 undef, 1 true, 2 false
        self.levels = [0]
        self.reasons = [-1]
        self.activity = [0.0]
        self.phase = [0]
        self.heap = []  # indexed max-heap of vars by activity
        self.heap_pos = [-1]
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.var_inc = 1.0
        self.ok = True
        self.decisions = 0
        self.conflicts = 0
        self.propagations = 0
        self._seen = [0]

    # ------------------------------------------------------------- setup

    def ensure_vars(self, n):
        while self.nvars < n:
            self.nvars += 1
            self.assigns.append(0)
            self.levels.append(0)
            self.reasons.append(-1)
            self.activity.append(0.0)
            self.phase.append(0)
            self.heap_pos.append(-1)
            self._seen.append(0)
            self.watches.append([])
            self.watches.append([])
            self._heap_insert(self.nvars)

    def add_clause(self, lits):
        """lits are DIMACS-signed; returns False if the formula is now UNSAT."""
        if not self.ok:
            return False
        self.cancel_until(0)
        enc = []
        seen = {}
        for l in lits:
            v = l if l > 0 else -l
            self.ensure_vars(v)
            e = (v << 1) | (0 if l > 0 else 1)
            a = self.assigns[v]
            if a:
                val = a if not (e & 1) else 3 - a
                if val == 1 and self.levels[v] == 0:
                    return True  # satisfied at top level
                if val == 2 and self.levels[v] == 0:
                    continue  # drop falsified literal
            prev = seen.get(v)
            if prev is None:
                seen[v] = e & 1
                enc.append(e)
            elif prev != (e & 1):
                return True  # tautology
        if not enc:
            self.ok = False
            return False
        if len(enc) == 1:
            if not self._enqueue(enc[0], -1):
                self.ok = False
                return False
            self.ok = self.propagate() == -1
            return self.ok
        cref = len(self.clauses)
        self.clauses.append(enc)
        self.watches[enc[0]].append(cref)
        self.watches[enc[1]].append(cref)
        return True

    # ------------------------------------------------------- heap helpers

    def _heap_less(self, u, v):
        au = self.activity[u]
        av = self.activity[v]
        return au > av or (au == av and u < v)

    def _heap_insert(self, v):
        if self.heap_pos[v] >= 0:
            return
        self.heap.append(v)
        i = len(self.heap) - 1
        self.heap_pos[v] = i
        self._sift_up(i)

    def _sift_up(self, i):
        heap = self.heap
        pos = self.heap_pos
        x = heap[i]
        while i > 0:
            p = (i - 1) >> 1
            if self._heap_less(x, heap[p]):
                heap[i] = heap[p]
                pos[heap[p]] = i
                i = p
            else:
                break
        heap[i] = x
        pos[x] = i

    def _sift_down(self, i):
        heap = self.heap
        pos = self.heap_pos
        n = len(heap)
        x = heap[i]
        while True:
            left = 2 * i + 1
            if left >= n:
                break
            right = left + 1
            child = left
            if right < n and self._heap_less(heap[right], heap[left]):
                child = right
            if self._heap_less(heap[child], x):
                heap[i] = heap[child]
                pos[heap[i]] = i
                i = child
            else:
                break
        heap[i] = x
        pos[x] = i

    def _heap_pop(self):
        heap = self.heap
        pos = self.heap_pos
        top = heap[0]
        last = heap.pop()
        pos[top] = -1
        if heap:
            heap[0] = last
            pos[last] = 0
            self._sift_down(0)
        return top

    def _bump(self, v):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            act = self.activity
            for u in range(1, self.nvars + 1):
                act[u] *= 1e-100
            self.var_inc *= 1e-100
        if self.heap_pos[v] >= 0:
            self._sift_up(self.heap_pos[v])

    # --------------------------------------------------------- assignment

    def _value(self, e):
        a = self.assigns[e >> 1]
        if a == 0:
            return 0
        return a if not (e & 1) else 3 - a

    def _enqueue(self, e, reason):
        v = e >> 1
        a = self.assigns[v]
        if a:
            val = a if not (e & 1) else 3 - a
            return val == 1
        self.assigns[v] = 2 if (e & 1) else 1
        self.levels[v] = len(self.trail_lim)
        self.reasons[v] = reason
        self.trail.append(e)
        return True

    def cancel_until(self, level):
        if len(self.trail_lim) <= level:
            return
        bound = self.trail_lim[level]
        trail = self.trail
        i = len(trail) - 1
        while i >= bound:
            e = trail[i]
            v = e >> 1
            self.phase[v] = e & 1
            self.assigns[v] = 0
            self.reasons[v] = -1
            if self.heap_pos[v] < 0:
                self._heap_insert(v)
            i -= 1
        del trail[bound:]
        del self.trail_lim[level:]
        self.qhead = len(trail)

    # -------------------------------------------------------- propagation

    def propagate(self):
        """Returns the index of a conflicting clause, or -1."""
        clauses = self.clauses
        watches = self.watches
        assigns = self.assigns
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            i = 0
            j = 0
            n = len(ws)
            while i < n:
                cref = ws[i]
                i += 1
                cl = clauses[cref]
                if cl[0] == false_lit:
                    cl[0] = cl[1]
                    cl[1] = false_lit
                first = cl[0]
                a = assigns[first >> 1]
                fval = 0 if a == 0 else (a if not (first & 1) else 3 - a)
                if fval == 1:
                    ws[j] = cref
                    j += 1
                    continue
                found = 0
                k = 2
                cn = len(cl)
                while k < cn:
                    e = cl[k]
                    a = assigns[e >> 1]
                    if a == 0 or (a if not (e & 1) else 3 - a) != 2:
                        cl[1] = e
                        cl[k] = false_lit
                        watches[e].append(cref)
                        found = 1
                        break
                    k += 1
                if found:
                    continue
                ws[j] = cref
                j += 1
                if fval == 2:
                    while i < n:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    self.qhead = len(self.trail)
                    return cref
                self._enqueue(first, cref)
            del ws[j:]
        return -1

    # ----------------------------------------------------------- analysis

    def analyze(self, confl):
        """1UIP learning; returns (learnt encoded lits, backjump level)."""
        seen = self._seen
        trail = self.trail
        levels = self.levels
        cur_level = len(self.trail_lim)
        learnt = [0]
        to_clear = []
        path = 0
        p = -1
        idx = len(trail) - 1
        cl = self.clauses[confl]
        first_pass = True
        while True:
            start = 0 if first_pass else 1
            for t in range(start, len(cl)):
                q = cl[t]
                v = q >> 1
                if not seen[v] and levels[v] > 0:
                    seen[v] = 1
                    to_clear.append(v)
                    self._bump(v)
                    if levels[v] >= cur_level:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            seen[p >> 1] = 0
            path -= 1
            if path <= 0:
                break
            cl = self.clauses[self.reasons[p >> 1]]
            first_pass = False
        learnt[0] = p ^ 1
        if len(learnt) == 1:
            back = 0
        else:
            mi = 1
            for t in range(2, len(learnt)):
                if levels[learnt[t] >> 1] > levels[learnt[mi] >> 1]:
                    mi = t
            learnt[1], learnt[mi] = learnt[mi], learnt[1]
            back = levels[learnt[1] >> 1]
        for v in to_clear:
            seen[v] = 0
        return learnt, back

    # ------------------------------------------------------------- search

    def solve(self, assumptions=()):
        if not self.ok:
            return False
        self.cancel_until(0)
        if self.propagate() != -1:
            self.ok = False
            return False
        assumps = []
        for l in assumptions:
            v = l if l > 0 else -l
            self.ensure_vars(v)
            assumps.append((v << 1) | (0 if l > 0 else 1))
        restart_n = 1
        budget = 100 * luby(restart_n)
        since_restart = 0
        while True:
            confl = self.propagate()
            if confl >= 0:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, back = self.analyze(confl)
                self.cancel_until(back)
                if len(learnt) == 1:
                    if not self._enqueue(learnt[0], -1):
                        self.ok = False
                        return False
                else:
                    cref = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[learnt[0]].append(cref)
                    self.watches[learnt[1]].append(cref)
                    self._enqueue(learnt[0], cref)
                self.var_inc *= 1.0526315789473684  # 1/0.95 activity decay
                continue
            if since_restart >= budget and len(self.trail_lim) > len(assumps):
                self.cancel_until(len(assumps))
                restart_n += 1
                budget = 100 * luby(restart_n)
                since_restart = 0
                continue
            # decide: assumptions first, then best activity
            lvl = len(self.trail_lim)
            if lvl < len(assumps):
                e = assumps[lvl]
                val = self._value(e)
                if val == 1:
                    self.trail_lim.append(len(self.trail))
                    continue
                if val == 2:
                    return False  # incompatible with assumptions
                self.trail_lim.append(len(self.trail))
                self._enqueue(e, -1)
                self.decisions += 1
                continue
            v = 0
            while self.heap:
                u = self.heap[0]
                if self.assigns[u] == 0:
                    v = u
                    break
                self._heap_pop()
            if v == 0:
                return True  # complete assignment
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue((v << 1) | self.phase[v], -1)

    def model_value(self, var):
        return self.assigns[var] == 1
