"""A four-point kernel whose three-point pieces all have the complete
Pick property while the whole matrix does not.

Run: python3 demos/quiggin.py
"""

import numpy as np

from hyperkos.rkhs import cpp_certify, mq_matrix, quiggin_gram, quiggin_report, regular_subspace

for x in (0.1, 0.25, 0.5, 0.9):
    G = quiggin_gram(x)
    report = quiggin_report(x)
    pieces = [cpp_certify(regular_subspace(G, [i for i in range(4) if i != omit])).is_cpp for omit in range(4)]
    whole = cpp_certify(G)
    eig = np.linalg.eigvalsh(mq_matrix(G, 0))
    print(f"x = {x}")
    print(f"  leading minors       {np.round(report.leading_minors, 6)}")
    print(f"  closed forms         {np.round(report.leading_minor_formulas, 6)}")
    print(f"  det MQ_0             {report.det_mq:+.6e} (closed form {report.det_mq_formula:+.6e})")
    print(f"  MQ_0 eigenvalues     {np.round(eig, 6)}")
    print(f"  3-point pieces CPP   {pieces}")
    print(f"  whole matrix CPP     {whole.is_cpp}")
