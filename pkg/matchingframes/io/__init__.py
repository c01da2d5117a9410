from matchingframes.io.matrix_file import MatrixFile, format_matrix, parse_matrix, read_matrix, write_matrix
from matchingframes.io.generators import MatrixGen, little_endian_rows
