"""
LorentzVol: volúmenes de bolas unidad de Lorentz ℓ^n_{p,q} y números de entropía
"""
__version__ = "1.0.0"
