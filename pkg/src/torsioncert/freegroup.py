"""Reduced words in finitely generated free groups, integer group rings,
and Fox's free differential calculus.

Letters are stored one at a time with exponent +-1, as signed integers:
letter k > 0 means generator number k-1, letter -k its inverse.  In text,
a lowercase letter is a generator and the matching uppercase letter its
inverse, so ``yxyXY`` reads y x y x^-1 y^-1 and ``1`` is the identity.

The Fox derivative d/dg is the Z-linear map on the group ring fixed by

    d(g)/dg = 1,   d(g^-1)/dg = -g^-1,   d(h^e)/dg = 0  (h != g),

together with the product rule d(uv)/dg = du/dg + u * dv/dg.
"""

from fractions import Fraction

from .errors import AlphabetMismatch, ParseError


class Alphabet:
    """An ordered list of single-letter generator names.

    >>> A = Alphabet("x y")
    >>> A.names
    ('x', 'y')
    >>> A.word("yxyXY").inverse()
    Word('yxYXY')
    """

    __slots__ = ("names", "_pos")

    def __init__(self, names):
        if isinstance(names, str):
            names = names.split() if " " in names else list(names)
        names = tuple(names)
        if not names:
            raise ValueError("alphabet needs at least one generator")
        for nm in names:
            if len(nm) != 1 or not ("a" <= nm <= "z"):
                raise ValueError("generator name must be a single letter a-z, got %r" % nm)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names in %r" % (names,))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_pos", {nm: i for i, nm in enumerate(names)})

    def __setattr__(self, name, value):
        raise AttributeError("alphabets are immutable")

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "Alphabet(%r)" % " ".join(self.names)

    def __contains__(self, name):
        return name in self._pos

    def index(self, name):
        try:
            return self._pos[name]
        except KeyError:
            raise ValueError("no generator %r in %r" % (name, self)) from None

    def generator(self, i):
        return Generator(self, i)

    def generators(self):
        return [Generator(self, i) for i in range(len(self.names))]

    def word(self, text):
        return Word.from_string(self, text)

    def identity(self):
        return Word(self, ())


class Generator:
    """One generator of an alphabet: its position and single-letter name."""

    __slots__ = ("alphabet", "index")

    def __init__(self, alphabet, index):
        if not 0 <= index < len(alphabet):
            raise ValueError("generator index %d out of range" % index)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "index", index)

    def __setattr__(self, name, value):
        raise AttributeError("generators are immutable")

    @property
    def name(self):
        return self.alphabet.names[self.index]

    def word(self):
        return Word(self.alphabet, (self.index + 1,), _reduced=True)

    def __eq__(self, other):
        return isinstance(other, Generator) and \
            self.alphabet == other.alphabet and self.index == other.index

    def __hash__(self):
        return hash((self.alphabet, self.index))

    def __repr__(self):
        return "Generator(%r)" % self.name


def _reduce(letters):
    out = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


class Word:
    """A freely reduced word; the empty word is the group identity.

    >>> A = Alphabet("x y")
    >>> A.word("xy") * A.word("Yx")
    Word('xx')
    >>> A.word("x") * A.word("X") == A.identity()
    True
    """

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet, letters, _reduced=False):
        letters = tuple(letters)
        n = len(alphabet)
        for l in letters:
            if not isinstance(l, int) or l == 0 or abs(l) > n:
                raise ValueError("bad letter %r for rank-%d alphabet" % (l, n))
        if not _reduced:
            letters = _reduce(letters)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("words are immutable")

    @classmethod
    def from_string(cls, alphabet, text):
        text = text.strip()
        if text == "1" or text == "":
            return cls(alphabet, ())
        letters = []
        for ch in text:
            low = ch.lower()
            if low not in alphabet:
                raise ParseError("letter %r not in alphabet %r" % (ch, alphabet))
            k = alphabet.index(low) + 1
            letters.append(k if ch == low else -k)
        return cls(alphabet, letters)

    def _check(self, other):
        if not isinstance(other, Word):
            raise TypeError("expected a Word, got %r" % (other,))
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(
                "words over %r and %r" % (self.alphabet, other.alphabet))

    def __mul__(self, other):
        self._check(other)
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self):
        return Word(self.alphabet, tuple(-l for l in reversed(self.letters)),
                    _reduced=True)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.alphabet.identity()
        for _ in range(n):
            out = out * self
        return out

    def __len__(self):
        return len(self.letters)

    def is_identity(self):
        return not self.letters

    def is_cyclically_reduced(self):
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]

    def exponent_sum(self, index=None):
        """Total exponent of generator ``index``, or the full vector."""
        if index is None:
            out = [0] * len(self.alphabet)
            for l in self.letters:
                out[abs(l) - 1] += 1 if l > 0 else -1
            return tuple(out)
        want = index + 1
        return sum(1 if l == want else -1 for l in self.letters
                   if abs(l) == want)

    def __eq__(self, other):
        return isinstance(other, Word) and self.alphabet == other.alphabet \
            and self.letters == other.letters

    def __hash__(self):
        return hash((self.alphabet, self.letters))

    def __str__(self):
        if not self.letters:
            return "1"
        names = self.alphabet.names
        return "".join(names[l - 1] if l > 0 else names[-l - 1].upper()
                       for l in self.letters)

    def __repr__(self):
        return "Word(%r)" % str(self)


def concat_reduce(w1, w2):
    """Freely reduced product of two words over the same alphabet."""
    return w1 * w2


class GroupRingElem:
    """A finite formal sum of words with scalar coefficients.

    Coefficients are integers for Fox derivatives; any scalar kind is
    accepted.  Zero coefficients are never stored.

    >>> A = Alphabet("x y")
    >>> one = GroupRingElem.one(A)
    >>> x = GroupRingElem.from_word(A.word("x"))
    >>> print((one + x) * (one - x))
    1 - x*x
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms):
        clean = {}
        for w, c in terms.items():
            if w.alphabet != alphabet:
                raise AlphabetMismatch("term %r not over %r" % (w, alphabet))
            if c != 0:
                clean[w] = c
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("group-ring elements are immutable")

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet, {})

    @classmethod
    def one(cls, alphabet):
        return cls(alphabet, {alphabet.identity(): 1})

    @classmethod
    def from_word(cls, w, coeff=1):
        return cls(w.alphabet, {w: coeff})

    def _check(self, other):
        if not isinstance(other, GroupRingElem):
            raise TypeError("expected a GroupRingElem, got %r" % (other,))
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(
                "elements over %r and %r" % (self.alphabet, other.alphabet))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElem(self.alphabet, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GroupRingElem(self.alphabet,
                             {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupRingElem):
            self._check(other)
            terms = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 * w2
                    terms[w] = terms.get(w, 0) + c1 * c2
            return GroupRingElem(self.alphabet, terms)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with the basis here, so left and right agree
        return self.scale(other)

    def scale(self, c):
        return GroupRingElem(self.alphabet,
                             {w: c * cw for w, cw in self.terms.items()})

    def augmentation(self):
        """Sum of the coefficients (image under all-generators-to-1)."""
        return sum(self.terms.values())

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, GroupRingElem) and \
            self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def _sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda wc: (len(wc[0]), str(wc[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self._sorted_terms():
            neg = c < 0
            mag = -c if neg else c
            if w.is_identity():
                body = str(mag)
            else:
                wtext = "*".join(str(w)[i] for i in range(len(w)))
                body = wtext if mag == 1 else "%s*%s" % (mag, wtext)
            if not pieces:
                pieces.append("-" + body if neg else body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return "GroupRingElem(%s)" % str(self)


def _parse_ring_term(alphabet, text):
    compact = text.replace("*", "").replace(" ", "")
    if not compact:
        raise ParseError("empty term in group-ring literal")
    i = 0
    while i < len(compact) and (compact[i].isdigit() or compact[i] == "/"):
        i += 1
    coeff_text, word_text = compact[:i], compact[i:]
    coeff = Fraction(coeff_text) if coeff_text else Fraction(1)
    if coeff.denominator == 1:
        coeff = int(coeff)
    if word_text == "" or word_text == "1":
        word = alphabet.identity()
    else:
        word = Word.from_string(alphabet, word_text)
    return word, coeff


def parse_ring_elem(alphabet, text):
    """Parse ``1 + x*y - x*y*X`` style group-ring literals."""
    s = text.strip()
    if not s:
        raise ParseError("empty group-ring literal")
    if s == "0":
        return GroupRingElem.zero(alphabet)
    terms = {}
    sign, buf = 1, []
    tokens = list(s)
    if tokens[0] in "+-":
        sign = -1 if tokens[0] == "-" else 1
        tokens = tokens[1:]
    for ch in tokens:
        if ch in "+-":
            w, c = _parse_ring_term(alphabet, "".join(buf))
            terms[w] = terms.get(w, 0) + sign * c
            sign = -1 if ch == "-" else 1
            buf = []
        else:
            buf.append(ch)
    w, c = _parse_ring_term(alphabet, "".join(buf))
    terms[w] = terms.get(w, 0) + sign * c
    return GroupRingElem(alphabet, terms)


def _gen_index(alphabet, g):
    if isinstance(g, Generator):
        if g.alphabet != alphabet:
            raise AlphabetMismatch("generator %r not over %r" % (g, alphabet))
        return g.index
    if isinstance(g, str):
        return alphabet.index(g)
    if isinstance(g, int):
        if not 0 <= g < len(alphabet):
            raise ValueError("generator index %d out of range" % g)
        return g
    raise TypeError("not a generator: %r" % (g,))


def fox_derivative(w, g):
    """Fox derivative of a word with respect to a generator.

    >>> A = Alphabet("x y")
    >>> print(fox_derivative(A.word("xyX"), "x"))
    1 - x*y*X
    >>> print(fox_derivative(A.word("yxyXY"), "y"))
    1 + y*x - y*x*y*X*Y
    """
    if not isinstance(w, Word):
        raise TypeError("expected a Word, got %r" % (w,))
    alphabet = w.alphabet
    gi = _gen_index(alphabet, g)
    want = gi + 1
    terms = {}
    prefix = alphabet.identity()
    for l in w.letters:
        if l == want:
            terms[prefix] = terms.get(prefix, 0) + 1
        elif l == -want:
            key = prefix * Word(alphabet, (-want,), _reduced=True)
            terms[key] = terms.get(key, 0) - 1
        prefix = prefix * Word(alphabet, (l,), _reduced=True)
    return GroupRingElem(alphabet, terms)


def fox_derivative_elem(e, g):
    """Fox derivative extended Z-linearly to group-ring elements."""
    out = GroupRingElem.zero(e.alphabet)
    for w, c in e.terms.items():
        out = out + fox_derivative(w, g).scale(c)
    return out
