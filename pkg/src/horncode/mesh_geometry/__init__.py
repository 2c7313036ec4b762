from .cones import DirectionSummary, cone_directions
from .generators import (
    FAMILIES,
    cylinder,
    generate_surface,
    genus_g,
    horn,
    klein_bottle,
    moebius_band,
    paraboloid,
    projective_plane,
    sphere,
    strip,
    torus,
    tube,
)
from .geodesics import (
    build_geodesic_graph,
    farthest_point_sample,
    geodesic_distances,
    inner_distance,
    lne_constant,
)
from .level_sets import GrowthEstimate, LinkPolyline, growth_exponent, link_length
from .mesh import Mesh, load_mesh, marks_path, merge_meshes, save_mesh, subdivide, submesh
from .topology import TopologyReport, mesh_topology
