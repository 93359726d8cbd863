import pandas as pd
import streamlit as st

from combinat import DecompType, parse_composition
from config import get_settings
from errors import ResourceLimitError, ZetaError
from funceq_validator import FunctionalEquationValidator
from output_parser.oracle_parser import OracleMethod
from output_parser.verification_parser import Verdict
from results_database import ZetaDatabase
from zeta_calculator import ZetaCalculator


@st.cache_resource
def get_calculator():
    store = ZetaDatabase(get_settings().db_path)
    return ZetaCalculator(store=store)


calculator = get_calculator()


def main():
    st.set_page_config(layout="wide", page_title="Heisenberg Zeta")

    st.title("Heisenberg Zeta")
    st.subheader("Fatores zeta locais normais de H(O_K) em primos não ramificados")
    st.divider()

    with st.sidebar:
        st.header("Parâmetros")
        st.divider()
        f_text = st.text_input("Graus de inércia f", value="1,1", key="f_input")
        prime = st.number_input("Primo p", min_value=2, value=2, step=1, key="prime_input")
        order = st.slider("Ordem da série", min_value=1, max_value=12, value=6, key="order_input")
        latex_style = st.selectbox("Estilo LaTeX", ["frac", "bracket", "zeta"], key="latex_style")
        st.divider()
        run_oracle = st.checkbox("Comparar com o oráculo", value=False, key="run_oracle")
        max_k = st.slider("k máximo do oráculo", min_value=1, max_value=5, value=3, disabled=not run_oracle)
        method = st.selectbox("Método", [m.value for m in OracleMethod], disabled=not run_oracle)

    try:
        f = parse_composition(f_text)
    except ZetaError as e:
        st.error(f"Composição inválida: {e}")
        return

    with st.spinner("Calculando W... Isso pode levar alguns segundos para n >= 4."):
        result = calculator.result(f)
        payload = calculator.compute(f, latex_style=latex_style)

    show_zeta_result(payload)
    st.divider()
    show_functional_equation(result)
    st.divider()
    show_summands(result, latex_style)
    st.divider()
    show_series(DecompType.unramified(f), int(prime), order)
    if run_oracle:
        st.divider()
        show_oracle(DecompType.unramified(f), int(prime), max_k, OracleMethod(method))


def show_zeta_result(payload):
    with st.expander("W(p, t)", expanded=True):
        col1, col2, col3 = st.columns(3)
        col1.metric("n", payload.n)
        col2.metric("Termos no numerador", payload.numerator_terms)
        col3.metric("Fatores no denominador", payload.denominator_factors)
        st.caption(f"Origem: {payload.provenance.value.replace('_', ' ')}")
        st.latex(payload.W.latex)


def show_functional_equation(result):
    with st.expander("Equação funcional", expanded=True):
        report = FunctionalEquationValidator(check_summands=False).validate(result)
        if report.verdict is Verdict.PASS:
            st.success("W(p^-1, t^-1) = (-1)^{3n} p^{C(3n,2)} t^{5n} W(p, t) verificada.")
        else:
            st.error("A equação funcional não se verificou.", icon="🔥")
        df_claims = pd.DataFrame(
            [
                {
                    "Objeto": claim.subject,
                    "(a, b, c)": f"({claim.symmetry.a}, {claim.symmetry.b}, {claim.symmetry.c})",
                    "Veredicto": claim.verdict.value,
                }
                for claim in report.claims
            ]
        )
        st.dataframe(df_claims, width="stretch", hide_index=True)


def show_summands(result, latex_style: str):
    with st.expander("Somandos D_{w,A}", expanded=False):
        rows = [
            {
                "Palavra": w.letters,
                "Partição A": str(A.to_lists()),
                "Termos": D.numerator_term_count(),
            }
            for w, A, D in result.summands
        ]
        st.dataframe(pd.DataFrame(rows), width="stretch", hide_index=True)
        for w, A, D in result.summands[:20]:
            st.markdown(f"**{w.letters}**, A = {A.to_lists()}")
            st.latex(D.to_latex(latex_style))


def show_series(decomp: DecompType, prime: int, order: int):
    with st.expander("Série truncada", expanded=True):
        series = calculator.series(decomp, order)
        df_series = pd.DataFrame(
            {
                "k": list(range(order + 1)),
                "coeficiente em p": [str(c) for c in series.coeffs],
                f"valor em p={prime}": [str(v) for v in series.evaluate(prime)],
            }
        )
        st.dataframe(df_series, width="stretch", hide_index=True)


def show_oracle(decomp: DecompType, prime: int, max_k: int, method: OracleMethod):
    with st.expander("Oráculo de força bruta", expanded=True):
        try:
            with st.spinner("Enumerando reticulados..."):
                report = calculator.oracle_report(decomp, prime, max_k, method)
        except ResourceLimitError as e:
            st.warning(f"Enumeração recusada: {e}", icon="⚠️")
            return
        except ZetaError as e:
            st.error(f"Erro no oráculo: {e}")
            return
        df_counts = pd.DataFrame([row.model_dump() for row in report.counts])
        df_counts = df_counts.rename(
            columns={"count": "a_{p^k}", "expected": "série", "agrees": "concorda"}
        )
        st.dataframe(df_counts, width="stretch", hide_index=True)
        if report.verdict is Verdict.PASS:
            st.success("Oráculo e série coincidem.")
        else:
            st.error("Oráculo e série divergem.", icon="🔥")


if __name__ == "__main__":
    main()
