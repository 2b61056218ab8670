#include "defs.h"

int script_count = 0;

int check_script_id(typval_T *argvars)
{
  varnumber_T id;

  if (argvars[0].v_type != VAR_NUMBER) {
    emsg(e_dictreq);
    return FAIL;
  }
  id = argvars[0].vval.v_number;
  if (id <= 0 || id > script_count) {
    semsg(e_invargNval, "id", tv_get_string(&argvars[0]));
    return FAIL;
  }
  return OK;
}

void f_getscriptinfo(typval_T *argvars, typval_T *rettv)
{
  scid_T sid = -1;
  char *pat = NULL;
  int filterpat = false;

  rettv->v_type = VAR_NUMBER;
  rettv->vval.v_number = 0;

  if (argvars[0].v_type == VAR_DICT) {
    sid = (scid_T)tv_dict_get_number(argvars[0].vval.v_dict, "sid");
    if (sid == -1) {
      pat = tv_dict_get_string(argvars[0].vval.v_dict, "name", true);
      if (pat != NULL) {
        filterpat = true;
      }
    }
  }

  rettv->vval.v_number = sid + filterpat;
}
