"""Regenerate the bundled FCIDUMP fixtures (requires pyscf).

Each file starts with comment lines recording the geometry, basis and the
full-CI ground-state energy (Hartree, including nuclear repulsion) for the
electron count in the header.
"""
import io

from pyscf import fci, gto, scf
from pyscf.tools import fcidump

SYSTEMS = [
    ("h2_sto3g", "H 0 0 0; H 0 0 0.7414", "sto-3g"),
    ("h2_631g", "H 0 0 0; H 0 0 0.7414", "6-31g"),
    ("lih_sto3g", "Li 0 0 0; H 0 0 1.5949", "sto-3g"),
]


def main():
    for name, atom, basis in SYSTEMS:
        mol = gto.M(atom=atom, basis=basis, unit="Angstrom", verbose=0)
        mf = scf.RHF(mol).run(conv_tol=1e-12)
        e_fci = fci.FCI(mf).kernel()[0]
        path = f"{name}.fcidump"
        fcidump.from_scf(mf, path, tol=1e-14)
        with open(path) as fh:
            body = fh.read()
        with open(path, "w") as fh:
            fh.write(f"# system: {atom} ({basis}, Angstrom)\n")
            fh.write(f"# hf_energy: {mf.e_tot:.12f}\n")
            fh.write(f"# fci_energy: {e_fci:.12f}\n")
            fh.write(body)
        print(name, mol.nao, mf.e_tot, e_fci)


if __name__ == "__main__":
    main()
