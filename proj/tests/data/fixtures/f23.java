import java.util.*;
public class Main {
  public static int solve(int[] v, int k) {
    int m = v.length;
    int cnt=0;
    while (m>0) {
      m /= 2;
      cnt+=1;
    }
    int cp = 0;
    for (int i = 0; i<v.length; i++) {
      for (int j = i+1; j < v.length; j++) {
        if ((v[i]+v[j]) % k==0) {
          cp++;
        }
      }
    }
    return cnt + cp;
  }

  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    int n = sc.nextInt();
    int k = sc.nextInt();
    int[] v = new int[n];
    for (int q = 0; q < n; q++) v[q] = sc.nextInt();
    System.out.println(solve(v, k));
  }
}
