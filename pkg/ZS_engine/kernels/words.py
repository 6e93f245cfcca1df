"""
Free-group words
Letters are 'a', 'b', ... for generators and 'A', 'B', ... for their inverses.
Word order is a < A < b < B < ..., compared letter by letter.
"""

import string
from typing import Iterator

from ZS_engine.data_models.surface_models import MoebiusMap
from ZS_engine.errors import InvalidMatrix


Matrix = tuple[float, float, float, float]

MAX_RANK = 26


def alphabet(rank: int) -> list[str]:
    if not 1 <= rank <= MAX_RANK:
        raise InvalidMatrix(f"Presentations need between 1 and {MAX_RANK} generators, got {rank}")
    letters = []
    for lower in string.ascii_lowercase[:rank]:
        letters.extend([lower, lower.upper()])
    return letters


def letter_order(rank: int) -> dict[str, int]:
    return {letter: index for index, letter in enumerate(alphabet(rank))}


def inverse_letter(letter: str) -> str:
    return letter.swapcase()


def inverse_word(word: str) -> str:
    return "".join(inverse_letter(x) for x in reversed(word))


def is_reduced(word: str) -> bool:
    return all(word[i + 1] != inverse_letter(word[i]) for i in range(len(word) - 1))


def is_cyclically_reduced(word: str) -> bool:
    if not word or not is_reduced(word):
        return False
    return len(word) == 1 or word[-1] != inverse_letter(word[0])


def word_key(word: str, order: dict[str, int]) -> tuple[int, ...]:
    return tuple(order[x] for x in word)


def canonical_rotation(word: str, order: dict[str, int]) -> str:
    """Lexicographically minimal cyclic rotation."""
    rotations = (word[i:] + word[:i] for i in range(len(word)))
    return min(rotations, key=lambda w: word_key(w, order))


def unoriented_canonical(word: str, order: dict[str, int]) -> str:
    """Representative shared by the conjugacy classes of word and its inverse."""
    forward = canonical_rotation(word, order)
    backward = canonical_rotation(inverse_word(word), order)
    return min(forward, backward, key=lambda w: word_key(w, order))


def is_proper_power(word: str) -> bool:
    n = len(word)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return True
    return False


def letter_matrices(generators: tuple[MoebiusMap, ...]) -> dict[str, Matrix]:
    letters = alphabet(len(generators))
    matrices: dict[str, Matrix] = {}
    for index, generator in enumerate(generators):
        matrices[letters[2 * index]] = generator.entries()
        matrices[letters[2 * index + 1]] = generator.inverse().entries()
    return matrices


def multiply(m: Matrix, n: Matrix) -> Matrix:
    return (
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    )


def word_matrix(word: str, generators: tuple[MoebiusMap, ...]) -> MoebiusMap:
    matrices = letter_matrices(generators)
    product: Matrix = (1.0, 0.0, 0.0, 1.0)
    for letter in word:
        product = multiply(product, matrices[letter])
    return MoebiusMap(a=product[0], b=product[1], c=product[2], d=product[3])


def walk_reduced_words(
    matrices: dict[str, Matrix],
    depth: int,
    first_letter: str,
) -> Iterator[tuple[str, Matrix]]:
    """
    Depth-first walk over all reduced words starting with `first_letter`,
    up to `depth` letters, carrying the running matrix product.

    The visiting order is fixed by the alphabet order.
    """
    letters = list(matrices)
    stack: list[tuple[str, Matrix]] = [(first_letter, matrices[first_letter])]
    while stack:
        word, product = stack.pop()
        yield word, product
        if len(word) >= depth:
            continue
        last_inverse = inverse_letter(word[-1])
        for letter in reversed(letters):
            if letter != last_inverse:
                stack.append((word + letter, multiply(product, matrices[letter])))
