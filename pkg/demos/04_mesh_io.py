"""Write a structured mesh to the text format and read it back."""
import numpy as np

from qtem import gen_rect_mesh, read_mesh, write_mesh
from qtem.mesh import ParseError

mesh = gen_rect_mesh(2.0, 1.0, 2, 1)
text = write_mesh(mesh)
print(text)

back = read_mesh(text)
print("round trip exact:", np.array_equal(back.nodes, mesh.nodes) and np.array_equal(back.elements, mesh.elements))

try:
    read_mesh(text.replace("nodes 15", "nodes fifteen"))
except ParseError as err:
    print("rejected:", err)
