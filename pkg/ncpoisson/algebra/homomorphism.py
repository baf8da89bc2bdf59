"""
Algebra maps given by generator images
"""

from typing import Dict, List, Sequence, Tuple

from ncpoisson.algebra.element import Element, bracket, format_element
from ncpoisson.algebra.spec import AlgebraSpec
from ncpoisson.exceptions import AlgebraMismatchError, NotAHomomorphismError
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)


def _target(images: Sequence[Element]) -> AlgebraSpec:
    if not images:
        raise NotAHomomorphismError("no generator images given")
    target = images[0].algebra
    for image in images[1:]:
        if image.algebra != target:
            raise AlgebraMismatchError("generator images live in different algebras")
    return target


def substitute(images: Sequence[Element], x: Element) -> Element:
    """
    Replace each generator of x's algebra by its image and multiply out.

    Monomials are expanded in normal-form order (p block, then q block), which is
    the order the source product uses; no relation check is made.
    """
    source = x.algebra
    if len(images) != source.n_vars:
        raise NotAHomomorphismError(
            f"{source} has {source.n_vars} generators, got {len(images)} images"
        )
    target = _target(images)
    powers: Dict[Tuple[int, int], Element] = {}

    def power(index: int, e: int) -> Element:
        key = (index, e)
        if key not in powers:
            powers[key] = images[index] if e == 1 else power(index, e - 1) * images[index]
        return powers[key]

    result = Element.zero(target)
    for mono, c in x.items():
        term = Element.constant(target, c)
        for index, e in enumerate(mono):
            if e:
                term = term * power(index, e)
        result = result + term
    return result


def _relation_failures(source: AlgebraSpec, images: Sequence[Element]) -> List[str]:
    failures = []
    for i in range(source.n_vars):
        for j in range(i + 1, source.n_vars):
            a, b = images[i], images[j]
            expected = substitute(images, Element(source, source.table_entry(i, j)))
            if source.is_weyl:
                commutator = a * b - b * a
                if commutator != expected:
                    failures.append(
                        f"[{source.generator_name(i)}, {source.generator_name(j)}] maps to "
                        f"{format_element(commutator)}, expected {format_element(expected)}"
                    )
                    continue
            elif a * b != b * a:
                failures.append(
                    f"images of {source.generator_name(i)} and {source.generator_name(j)} do not commute"
                )
                continue
            image_bracket = bracket(a, b)
            if image_bracket != expected:
                failures.append(
                    f"{{{source.generator_name(i)}, {source.generator_name(j)}}} maps to "
                    f"{format_element(image_bracket)}, expected {format_element(expected)}"
                )
    return failures


def check_homomorphism(source: AlgebraSpec, images: Sequence[Element]) -> None:
    """Raise NotAHomomorphismError unless the images satisfy every source relation"""
    if len(images) != source.n_vars:
        raise NotAHomomorphismError(
            f"{source} has {source.n_vars} generators, got {len(images)} images"
        )
    target = _target(images)
    if source.is_weyl != target.is_weyl:
        raise NotAHomomorphismError("source and target must be of the same class")
    failures = _relation_failures(source, images)
    if failures:
        raise NotAHomomorphismError("; ".join(failures))


def hom_apply(images: Sequence[Element], x: Element) -> Element:
    """Apply the Poisson homomorphism determined by the generator images to x"""
    check_homomorphism(x.algebra, images)
    result = substitute(images, x)
    logger.debug("mapped %s to %s", format_element(x), format_element(result))
    return result
