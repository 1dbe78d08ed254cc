"""Seeded random-number stream shared by every stochastic component.

The generator is xoshiro256++ with splitmix64 seeding (the reference
seeding recipe). It was picked over ``random.Random`` / numpy generators
because the compiled kernel re-implements the exact same update in C, so
a run produces bit-identical draw sequences on either backend.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


class RngStream:
    """Deterministic uniform stream: same seed, same draws, bit for bit.

    Supplies uniform doubles in [0, 1), bounded integers, and uniforms over
    [a, b). State is four 64-bit words, exposed via ``getstate``/``setstate``
    so the compiled kernel can run the stream natively and hand it back.
    """

    __slots__ = ("seed", "_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        x = self.seed
        words = []
        for _ in range(4):
            # splitmix64: one output per increment of the golden-ratio counter
            x = (x + 0x9E3779B97F4A7C15) & _MASK64
            z = x
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
            words.append(z ^ (z >> 31))
        self._s0, self._s1, self._s2, self._s3 = words

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        x = (s0 + s3) & _MASK64
        result = ((((x << 23) & _MASK64) | (x >> 41)) + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) & _MASK64) | (s3 >> 19)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1), 53 significant bits."""
        return (self.next_u64() >> 11) * _INV_2_53

    def integer(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        i = int(self.uniform() * n)
        return n - 1 if i >= n else i

    def uniform_range(self, a: float, b: float) -> float:
        """Uniform double in [a, b)."""
        return a + (b - a) * self.uniform()

    def getstate(self) -> tuple[int, int, int, int]:
        return (self._s0, self._s1, self._s2, self._s3)

    def setstate(self, state) -> None:
        s0, s1, s2, s3 = state
        self._s0 = s0 & _MASK64
        self._s1 = s1 & _MASK64
        self._s2 = s2 & _MASK64
        self._s3 = s3 & _MASK64
