# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: C replicas of the pure-Python slot loops.

Every arithmetic step (SplitMix64 stream, Born-rule masses, clamped
sampling, collapse renormalization, slot logic) mirrors the pure backend
operation for operation, so tallies match it bit for bit from equal seeds.
"""

from libc.stdint cimport uint64_t
from libc.math cimport sqrt

from entmac.hyperdense import PairCorrelationError


cdef uint64_t GOLDEN = <uint64_t>0x9E3779B97F4A7C15
cdef uint64_t MIX1 = <uint64_t>0xBF58476D1CE4E5B9
cdef uint64_t MIX2 = <uint64_t>0x94D049BB133111EB
cdef double TWO_NEG53 = 1.0 / 9007199254740992.0
cdef double PROB_CLAMP = 1e-12
cdef double RSQRT2 = 1.0 / sqrt(2.0)


cdef inline uint64_t next_u64(uint64_t* s) nogil:
    s[0] += GOLDEN
    cdef uint64_t z = s[0]
    z ^= z >> 30
    z *= MIX1
    z ^= z >> 27
    z *= MIX2
    z ^= z >> 31
    return z


cdef inline double next_float(uint64_t* s) nogil:
    return <double>(next_u64(s) >> 11) * TWO_NEG53


cdef inline int next_bit(uint64_t* s) nogil:
    return <int>(next_u64(s) >> 63)


cdef inline int qubit_c_draw(uint64_t* s) nogil:
    """Measure the two halves of |beta_00> like measure_qubit does, twice.

    Returns the common bit, or -1 if the halves disagreed (impossible under
    the clamp rule, checked anyway).
    """
    cdef double re0 = RSQRT2, im0 = 0.0
    cdef double re1 = 0.0, im1 = 0.0
    cdef double re2 = 0.0, im2 = 0.0
    cdef double re3 = RSQRT2, im3 = 0.0
    cdef double p0, p1, u, norm
    cdef int c_a, c_b

    # measure Alice's qubit: outcome 0 keeps indices {0, 1}
    p0 = (re0 * re0 + im0 * im0) + (re1 * re1 + im1 * im1)
    p1 = (re2 * re2 + im2 * im2) + (re3 * re3 + im3 * im3)
    u = next_float(s)
    if p0 < PROB_CLAMP:
        c_a = 1
    elif p1 < PROB_CLAMP:
        c_a = 0
    else:
        c_a = 0 if u < p0 else 1
    if c_a == 0:
        norm = sqrt(p0)
        re0 = re0 / norm; im0 = im0 / norm
        re1 = re1 / norm; im1 = im1 / norm
        re2 = 0.0; im2 = 0.0; re3 = 0.0; im3 = 0.0
    else:
        norm = sqrt(p1)
        re2 = re2 / norm; im2 = im2 / norm
        re3 = re3 / norm; im3 = im3 / norm
        re0 = 0.0; im0 = 0.0; re1 = 0.0; im1 = 0.0

    # measure Bob's qubit: outcome 0 keeps indices {0, 2}
    p0 = (re0 * re0 + im0 * im0) + (re2 * re2 + im2 * im2)
    p1 = (re1 * re1 + im1 * im1) + (re3 * re3 + im3 * im3)
    u = next_float(s)
    if p0 < PROB_CLAMP:
        c_b = 1
    elif p1 < PROB_CLAMP:
        c_b = 0
    else:
        c_b = 0 if u < p0 else 1

    if c_a != c_b:
        return -1
    return c_a


def splitmix_stream(unsigned long long seed, int n):
    """First n raw 64-bit words from the stream (for parity tests)."""
    cdef uint64_t s = seed
    cdef int i
    out = []
    for i in range(n):
        out.append(next_u64(&s))
    return out


def float_stream(unsigned long long seed, int n):
    """First n uniform doubles from the stream (for parity tests)."""
    cdef uint64_t s = seed
    cdef int i
    out = []
    for i in range(n):
        out.append(next_float(&s))
    return out


def aloha_tally(int m, double p, long n_slots, unsigned long long seed):
    """Successful-slot count for one contiguous chunk of an Aloha run."""
    cdef uint64_t s = seed
    cdef long successes = 0
    cdef long i
    cdef int j, transmitters
    with nogil:
        for i in range(n_slots):
            transmitters = 0
            for j in range(m):
                if next_float(&s) < p:
                    transmitters += 1
            if transmitters == 1:
                successes += 1
    return successes


def hyperdense_tally(long n_slots, unsigned long long seed, str c_source):
    """(collision, idle, single_alice, single_bob) counts for one chunk."""
    cdef int qubit_path
    if c_source == "qubit":
        qubit_path = 1
    elif c_source == "coin":
        qubit_path = 0
    else:
        raise ValueError(f"c_source must be 'qubit' or 'coin', got {c_source!r}")

    cdef uint64_t s = seed
    cdef long collision = 0, idle = 0, single_alice = 0, single_bob = 0
    cdef long i
    cdef int a1, b1, c, a_sends, b_sends
    cdef int mismatched = 0
    with nogil:
        for i in range(n_slots):
            a1 = next_bit(&s)
            next_bit(&s)  # a2: payload, does not affect the tally
            b1 = next_bit(&s)
            next_bit(&s)  # b2
            if qubit_path:
                c = qubit_c_draw(&s)
                if c < 0:
                    mismatched = 1
                    break
            else:
                c = next_bit(&s)
            a_sends = a1 == c
            b_sends = b1 == c
            if a_sends and b_sends:
                collision += 1
            elif not a_sends and not b_sends:
                idle += 1
            elif a_sends:
                single_alice += 1
            else:
                single_bob += 1
    if mismatched:
        raise PairCorrelationError("half-pair measurements disagree")
    return collision, idle, single_alice, single_bob
