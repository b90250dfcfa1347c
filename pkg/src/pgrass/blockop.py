"""Block operators relative to a fixed orthogonal splitting H = H+ (+) H-.

Operators are stored as four blocks.  The mixed (inf, p) norm puts the
operator norm on the diagonal blocks and the Schatten p-norm on the
corners; it dominates the operator norm of the assembled matrix and is
submultiplicative.  Blocks are the single source of truth; dense
assembly round-trips bit-exactly.

Values are immutable (arrays are copied and frozen), so concurrent use
is safe.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotAProjection, SectionUndefined, Singular
from .linalg import as_complex_matrix, op_norm, polar, schatten_norm
from .tolerances import scaled_tol


@dataclass(frozen=True)
class Splitting:
    """Dimensions of H+ and H- at this truncation."""

    dim_plus: int
    dim_minus: int

    def __post_init__(self):
        if self.dim_plus < 1 or self.dim_minus < 1:
            raise DimensionMismatch("both splitting dimensions must be >= 1")

    @property
    def total(self):
        return self.dim_plus + self.dim_minus


def _frozen(M):
    A = np.array(M, dtype=complex)
    A.setflags(write=False)
    return A


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """Operator stored as blocks [[a11, a12], [a21, a22]] w.r.t. a splitting.

    a11 : H+ -> H+,  a12 : H- -> H+,  a21 : H+ -> H-,  a22 : H- -> H-.
    """

    splitting: Splitting
    a11: np.ndarray = field(repr=False)
    a12: np.ndarray = field(repr=False)
    a21: np.ndarray = field(repr=False)
    a22: np.ndarray = field(repr=False)

    def __post_init__(self):
        dp, dm = self.splitting.dim_plus, self.splitting.dim_minus
        blocks = {
            "a11": (as_complex_matrix(self.a11), (dp, dp)),
            "a12": (as_complex_matrix(self.a12), (dp, dm)),
            "a21": (as_complex_matrix(self.a21), (dm, dp)),
            "a22": (as_complex_matrix(self.a22), (dm, dm)),
        }
        for name, (A, shape) in blocks.items():
            if A.shape != shape:
                raise DimensionMismatch(
                    f"block {name} has shape {A.shape}, expected {shape}"
                )
            object.__setattr__(self, name, _frozen(A))

    # -- construction -------------------------------------------------

    @classmethod
    def from_dense(cls, M, splitting):
        A = as_complex_matrix(M)
        dp, dm = splitting.dim_plus, splitting.dim_minus
        if A.shape != (dp + dm, dp + dm):
            raise DimensionMismatch(
                f"dense matrix {A.shape} does not match splitting {dp}+{dm}"
            )
        return cls(
            splitting,
            A[:dp, :dp],
            A[:dp, dp:],
            A[dp:, :dp],
            A[dp:, dp:],
        )

    @classmethod
    def zero(cls, splitting):
        dp, dm = splitting.dim_plus, splitting.dim_minus
        return cls(
            splitting,
            np.zeros((dp, dp)),
            np.zeros((dp, dm)),
            np.zeros((dm, dp)),
            np.zeros((dm, dm)),
        )

    @classmethod
    def identity(cls, splitting):
        dp, dm = splitting.dim_plus, splitting.dim_minus
        return cls(
            splitting,
            np.eye(dp),
            np.zeros((dp, dm)),
            np.zeros((dm, dp)),
            np.eye(dm),
        )

    @classmethod
    def eplus(cls, splitting):
        """Projection onto H+."""
        dp, dm = splitting.dim_plus, splitting.dim_minus
        return cls(
            splitting,
            np.eye(dp),
            np.zeros((dp, dm)),
            np.zeros((dm, dp)),
            np.zeros((dm, dm)),
        )

    @classmethod
    def eminus(cls, splitting):
        """Projection onto H-."""
        dp, dm = splitting.dim_plus, splitting.dim_minus
        return cls(
            splitting,
            np.zeros((dp, dp)),
            np.zeros((dp, dm)),
            np.zeros((dm, dp)),
            np.eye(dm),
        )

    # -- assembly and algebra -----------------------------------------

    def dense(self):
        top = np.hstack([self.a11, self.a12])
        bot = np.hstack([self.a21, self.a22])
        return np.vstack([top, bot])

    def _check_same(self, other):
        if self.splitting != other.splitting:
            raise DimensionMismatch("operands use different splittings")

    def __matmul__(self, other):
        self._check_same(other)
        return BlockOperator(
            self.splitting,
            self.a11 @ other.a11 + self.a12 @ other.a21,
            self.a11 @ other.a12 + self.a12 @ other.a22,
            self.a21 @ other.a11 + self.a22 @ other.a21,
            self.a21 @ other.a12 + self.a22 @ other.a22,
        )

    def __add__(self, other):
        self._check_same(other)
        return BlockOperator(
            self.splitting,
            self.a11 + other.a11,
            self.a12 + other.a12,
            self.a21 + other.a21,
            self.a22 + other.a22,
        )

    def __sub__(self, other):
        self._check_same(other)
        return BlockOperator(
            self.splitting,
            self.a11 - other.a11,
            self.a12 - other.a12,
            self.a21 - other.a21,
            self.a22 - other.a22,
        )

    def __neg__(self):
        return BlockOperator(self.splitting, -self.a11, -self.a12, -self.a21, -self.a22)

    def __mul__(self, scalar):
        c = complex(scalar)
        return BlockOperator(
            self.splitting, c * self.a11, c * self.a12, c * self.a21, c * self.a22
        )

    __rmul__ = __mul__

    @property
    def H(self):
        """Adjoint: blocks conjugate-transposed, corners swapped."""
        return BlockOperator(
            self.splitting,
            self.a11.conj().T,
            self.a21.conj().T,
            self.a12.conj().T,
            self.a22.conj().T,
        )

    # -- serialization -------------------------------------------------

    def to_json_dict(self):
        def as_re_im(A):
            return {"re": A.real.tolist(), "im": A.imag.tolist()}

        return {
            "schema_version": 1,
            "kind": "block_operator",
            "dim_plus": self.splitting.dim_plus,
            "dim_minus": self.splitting.dim_minus,
            "a11": as_re_im(self.a11),
            "a12": as_re_im(self.a12),
            "a21": as_re_im(self.a21),
            "a22": as_re_im(self.a22),
        }

    @classmethod
    def from_json_dict(cls, d):
        from .errors import InputSchemaError

        try:
            if d.get("kind") != "block_operator":
                raise InputSchemaError("kind must be 'block_operator'")
            sp = Splitting(int(d["dim_plus"]), int(d["dim_minus"]))

            def parse(block):
                b = d[block]
                return np.asarray(b["re"], dtype=float) + 1j * np.asarray(
                    b["im"], dtype=float
                )

            return cls(sp, parse("a11"), parse("a12"), parse("a21"), parse("a22"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputSchemaError(f"bad block-operator JSON: {exc}") from exc


def norm_infty_p(A, p):
    """Mixed norm: ||a11|| + ||a22|| + ||a12||_p + ||a21||_p."""
    return (
        op_norm(A.a11)
        + op_norm(A.a22)
        + schatten_norm(A.a12, p)
        + schatten_norm(A.a21, p)
    )


def commutator_with_eplus(A):
    """[A, E+] = A E+ - E+ A = [[0, -a12], [a21, 0]].

    Computed literally as A E+ - E+ A; the corner signs follow from that
    convention and are covered by tests.
    """
    dp, dm = A.splitting.dim_plus, A.splitting.dim_minus
    return BlockOperator(
        A.splitting,
        np.zeros((dp, dp)),
        -A.a12,
        A.a21,
        np.zeros((dm, dm)),
    )


def adjoint(A):
    """Adjoint of a block operator; preserves the mixed norm exactly."""
    return A.H


def require_projection(P, tol=None, name="operator"):
    """Raise NotAProjection unless ||P^2 - P|| and ||P - P*|| are small."""
    D = P.dense()
    n = D.shape[0]
    t = scaled_tol(n, 1.0, tol)
    idem = op_norm(D @ D - D)
    herm = op_norm(D - D.conj().T)
    if idem > t or herm > t:
        raise NotAProjection(
            f"{name}: idempotency residual {idem:.3e}, hermiticity {herm:.3e} "
            f"exceed tolerance {t:.3e}"
        )
    return D


def transport_unitary(P, Q, tol=None):
    """Unitary conjugating P to Q, via the section S = QP + (1-Q)(1-P).

    S satisfies S P = Q S; when S is invertible its unitary polar factor
    U inherits the intertwining, so U P U* = Q.  The operational
    invertibility test is sigma_min(S) above the scaled tolerance
    (guaranteed when ||Q - P|| < 1).
    """
    P._check_same(Q)
    require_projection(P, tol, "P")
    require_projection(Q, tol, "Q")
    one = BlockOperator.identity(P.splitting)
    S = Q @ P + (one - Q) @ (one - P)
    try:
        U, _ = polar(S.dense(), tol)
    except Singular as exc:
        raise SectionUndefined(
            f"section S = QP + (1-Q)(1-P) is numerically singular: {exc}"
        ) from exc
    return BlockOperator.from_dense(U, P.splitting)
