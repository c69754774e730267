"""Mark models selectable by name."""

from enum import Enum

from geometry import MarkedPattern, PointPattern

from .nearest import nearest_neighbor_marks
from .response import ResponseFunction
from .shot_noise import shot_noise_marks, voronoi_shot_noise_marks
from .voronoi import voronoi_area_marks, voronoi_inertia_marks


class MarkModel(str, Enum):
    """Names of the geometric marking functions."""

    SHOT_NOISE = "shot_noise"
    NEAREST_NEIGHBOR = "nearest_neighbor"
    VORONOI_AREA = "voronoi_area"
    VORONOI_INERTIA = "voronoi_inertia"
    VORONOI_SHOT_NOISE = "voronoi_shot_noise"

    @property
    def uses_response(self) -> bool:
        """Whether the model depends on the response function."""
        return self in (MarkModel.SHOT_NOISE, MarkModel.VORONOI_SHOT_NOISE)

    @property
    def min_points(self) -> int:
        """Smallest pattern the model is defined on."""
        if self in (MarkModel.NEAREST_NEIGHBOR, MarkModel.VORONOI_SHOT_NOISE):
            return 2
        if self in (MarkModel.VORONOI_AREA, MarkModel.VORONOI_INERTIA):
            return 1
        return 0


def compute_marks(
    model: MarkModel | str, p: PointPattern, resp: ResponseFunction | None = None
) -> MarkedPattern:
    """Mark ``p`` with the named model."""
    model = MarkModel(model)
    resp = resp or ResponseFunction()
    match model:
        case MarkModel.SHOT_NOISE:
            return shot_noise_marks(p, resp)
        case MarkModel.NEAREST_NEIGHBOR:
            return nearest_neighbor_marks(p)
        case MarkModel.VORONOI_AREA:
            return voronoi_area_marks(p)
        case MarkModel.VORONOI_INERTIA:
            return voronoi_inertia_marks(p)
        case MarkModel.VORONOI_SHOT_NOISE:
            return voronoi_shot_noise_marks(p, resp)
