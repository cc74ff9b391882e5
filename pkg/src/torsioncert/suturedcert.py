"""Product certificates for sutured handlebodies presented by the images
of surface generators inside the ambient free group.

The certificate is the determinant of the block matrix of Fox derivatives
of those images pushed through a representation: nonzero exactly when the
sutured manifold is a homology product for that coefficient system.  An
optional oracle rebuilds the verdict from the presentation 2-complex on an
enlarged alphabet and compares ranks.
"""

from . import linalg as _la
from . import scalar as _s
from .errors import AlphabetMismatch, OracleMismatch, ParseError
from .freegroup import Alphabet, Word, fox_derivative
from .linalg import Matrix
from .representation import Representation
from .twisted import Presentation, build_complex, homology_dims


class SuturedHandlebodyData:
    """Inclusion data: one ambient word per surface generator.

    Balanced by construction: as many images as ambient generators.
    """

    def __init__(self, alphabet, images, name=""):
        images = tuple(images)
        if len(images) != len(alphabet):
            raise ValueError(
                "need %d images for rank %d, got %d (unbalanced data)"
                % (len(alphabet), len(alphabet), len(images)))
        for w in images:
            if not isinstance(w, Word) or w.alphabet != alphabet:
                raise AlphabetMismatch("image %r over the wrong alphabet"
                                       % (w,))
        self.alphabet = alphabet
        self.images = images
        self.name = name

    @property
    def ambient_rank(self):
        return len(self.alphabet)

    @property
    def surface_rank(self):
        return len(self.images)

    def __repr__(self):
        return "SuturedHandlebodyData(%s -> %s)" % (
            ", ".join(self.alphabet.names),
            ", ".join(str(w) for w in self.images))


class Certificate:
    """Outcome of the product test for one representation."""

    def __init__(self, determinant, is_product, rep_description,
                 oracle_h1=None, det_scale=1.0, extended=False):
        self.determinant = determinant
        self.is_product = is_product
        self.rep_description = rep_description
        self.oracle_h1 = oracle_h1
        self.det_scale = det_scale
        self.extended = extended

    def __repr__(self):
        tail = ", oracle_h1=%d" % self.oracle_h1 \
            if self.oracle_h1 is not None else ""
        return "Certificate(det=%s, product=%s%s)" % (
            _s.scalar_str(self.determinant), self.is_product, tail)


def fox_matrix(data, rep):
    """Block matrix of evaluated Fox derivatives of the surface images.

    Block (i, j) is the image under the representation of the j-th partial
    derivative of the i-th surface word; the result is square of side
    rep.n * rank.
    """
    if rep.alphabet != data.alphabet:
        raise AlphabetMismatch("representation over %r, data over %r"
                               % (rep.alphabet, data.alphabet))
    k = len(data.alphabet)
    blocks = [[rep.eval_ring_elem(fox_derivative(w, j)) for j in range(k)]
              for w in data.images]
    return _la.block_assemble(blocks)


def _fresh_surface_names(ambient):
    pool = "abcdefghijklmnopqrstuvwxyz"
    taken = set(ambient.names)
    fresh = [c for c in pool if c not in taken]
    if len(fresh) < len(ambient):
        raise ValueError("no free letters for the surface generators")
    return fresh[:len(ambient)]


def enlarged_presentation(data):
    """The 2-complex presentation with a relator image_i . s_i^-1 per
    surface generator, over the ambient alphabet extended by fresh surface
    letters; surface edges come after the ambient ones."""
    k = len(data.alphabet)
    surface = _fresh_surface_names(data.alphabet)
    big = Alphabet(list(data.alphabet.names) + surface)
    relators = []
    for i, w in enumerate(data.images):
        letters = tuple(w.letters) + (-(k + i + 1),)
        relators.append(Word(big, letters))
    return big, relators


def extend_rep(data, rep):
    """The representation of the enlarged alphabet agreeing with rep on
    ambient generators and sending each surface generator to the image of
    its word, so every enlarged relator dies."""
    big, _ = enlarged_presentation(data)
    images = list(rep.images) + [rep.eval_word(w) for w in data.images]
    return Representation(big, images, sl_flag=False)


def oracle_dims(data, rep):
    """(h0, h1, h2) of the enlarged presentation complex, its relative h1
    with the surface edges collapsed, and the complex's cell-count Euler
    characteristic 1 - 2k + k."""
    big, relators = enlarged_presentation(data)
    big_rep = extend_rep(data, rep)
    pres = Presentation(big, relators, name=data.name or "enlarged")
    cx = build_complex(pres, big_rep)
    dims = homology_dims(cx)
    n = rep.n
    k = len(data.alphabet)
    # relative cochains: only ambient-edge columns survive collapsing B
    sub = cx.d2.submatrix(range(cx.d2.rows), range(k * n))
    rel_h1 = k * n - sub.rank()
    chi = 1 - 2 * k + k
    return dims, rel_h1, chi


def certify(data, rep, with_oracle=False):
    """Decide homology-product-ness by the Fox determinant; optionally
    cross-check against the rank of the relative presentation complex.

    A disagreement between the two routes raises rather than returning a
    silently wrong verdict.
    """
    m = fox_matrix(data, rep)
    det, scale = _la.det_with_scale(m)
    is_product = not _s.zero_test(det, scale=scale)
    cert = Certificate(det, is_product, rep.description(),
                       det_scale=scale,
                       extended=len(data.alphabet) > 2)
    if with_oracle:
        _, rel_h1, _ = oracle_dims(data, rep)
        cert.oracle_h1 = rel_h1
        if is_product != (rel_h1 == 0):
            raise OracleMismatch(
                "determinant verdict %s but relative h1 = %d"
                % (is_product, rel_h1))
    return cert


def pants_example():
    """The fibered-over-the-pants instance: images x and y x y x^-1 y^-1."""
    alphabet = Alphabet("x y")
    return SuturedHandlebodyData(
        alphabet,
        [Word.from_string(alphabet, "x"),
         Word.from_string(alphabet, "yxyXY")],
        name="pants")


# text form: optional "name:", "ambient:" header, "images:" block with one
# word per line

def sutured_to_text(data):
    lines = []
    if data.name:
        lines.append("name: %s" % data.name)
    lines.append("ambient: %s" % " ".join(data.alphabet.names))
    lines.append("images:")
    for w in data.images:
        lines.append(str(w))
    return "\n".join(lines) + "\n"


def sutured_from_text(text):
    name = ""
    alphabet = None
    image_strs = []
    in_images = False
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition(":")
        key = key.strip()
        if sep and key in ("name", "ambient", "images"):
            in_images = False
            val = val.strip()
            if key == "name":
                name = val
            elif key == "ambient":
                try:
                    alphabet = Alphabet(val)
                except ValueError as exc:
                    raise ParseError("line %d: %s" % (ln, exc)) from None
            else:
                in_images = True
                if val:
                    image_strs.append((ln, val))
        elif in_images and not sep:
            image_strs.append((ln, line))
        elif in_images:
            raise ParseError("line %d: unknown key %r" % (ln, key))
        else:
            raise ParseError("line %d: expected 'key: value'" % ln)
    if alphabet is None:
        raise ParseError("missing ambient line")
    images = []
    for ln, s in image_strs:
        try:
            images.append(Word.from_string(alphabet, s))
        except (ValueError, KeyError) as exc:
            raise ParseError("line %d: %s" % (ln, exc)) from None
    try:
        return SuturedHandlebodyData(alphabet, images, name=name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
